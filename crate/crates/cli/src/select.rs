//! Turning command-line selectors into a system, automorphisms and a set.

use std::sync::Arc;

use anyhow::{bail, Context, Result};
use qpcox_core::coxeter::{parse_word, CoxeterSystem, DiagramAut, Family, GenSet};
use qpcox_core::qpsets::ScaledWSet;

use crate::Common;

pub fn system(c: &Common) -> Result<Arc<CoxeterSystem>> {
    let spec = match std::fs::read_to_string(&c.ty) {
        Ok(text) => text,
        Err(_) => c.ty.clone(),
    };
    let sys = CoxeterSystem::from_type(spec.trim()).with_context(|| format!("bad --type {:?}", c.ty))?;
    if sys.family() == Family::Universal && c.cutoff.is_none() {
        bail!("--cutoff is required for universal systems");
    }
    Ok(sys)
}

/// Resolves `--theta`. `list` is handled by the caller.
pub fn theta(sys: &CoxeterSystem, text: &str) -> Result<DiagramAut> {
    let auts = sys.diagram_automorphisms();
    let t = text.trim();
    let pick = |pred: &dyn Fn(&DiagramAut) -> bool, what: &str| -> Result<DiagramAut> {
        auts.iter()
            .find(|a| pred(a))
            .cloned()
            .with_context(|| format!("{} has no {what} diagram automorphism", sys.name()))
    };
    match t {
        "id" => Ok(DiagramAut::identity(sys.rank())),
        "w0" => Ok(sys.w0_automorphism()?),
        "swap" => {
            let inv: Vec<&DiagramAut> = auts.iter().filter(|a| !a.is_identity() && a.is_involution()).collect();
            match inv.len() {
                0 => bail!("{} has no involutive diagram automorphism", sys.name()),
                1 => Ok(inv[0].clone()),
                _ => bail!(
                    "--theta swap is ambiguous for {}; give images, one of {}",
                    sys.name(),
                    inv.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ")
                ),
            }
        }
        "rot" => pick(&|a| a.order() == 3, "order-3"),
        _ => {
            let images = parse_word(t.trim_matches(|c| c == '[' || c == ']'), sys.rank())?;
            if images.len() != sys.rank() {
                bail!("--theta needs {} images, got {}", sys.rank(), images.len());
            }
            let a = DiagramAut::from_images(images);
            if !auts.contains(&a) {
                bail!("{a} is not a diagram automorphism of {}", sys.name());
            }
            Ok(a)
        }
    }
}

pub fn theta_list(sys: &CoxeterSystem) -> String {
    let mut out = String::new();
    for a in sys.diagram_automorphisms() {
        out.push_str(&format!("{a}\torder {}\n", a.order()));
    }
    out
}

/// The one set selected by `--regular`, `--coset`, `--class` or `--theta/--seed`.
pub fn set(sys: &Arc<CoxeterSystem>, c: &Common) -> Result<ScaledWSet> {
    let chosen = [c.regular, c.coset.is_some(), c.class.is_some(), c.theta.is_some() || c.seed.is_some()]
        .iter()
        .filter(|b| **b)
        .count();
    if chosen != 1 {
        bail!("select exactly one of --regular, --coset, --class, or --theta/--seed");
    }
    if c.regular {
        return Ok(ScaledWSet::regular(sys, c.cutoff)?);
    }
    if let Some(j) = &c.coset {
        let j: GenSet = parse_word(j, sys.rank())?.into_iter().map(usize::from).collect();
        return Ok(ScaledWSet::coset_set(sys, j, c.cutoff)?);
    }
    if let Some(name) = &c.class {
        if name != "fpf" {
            bail!("unknown --class {name:?}; only fpf is defined");
        }
        let n = sys.rank();
        let is_a = sys.is_finite() && sys.name().starts_with('A');
        if !is_a || n % 2 == 0 {
            bail!("the fpf class needs type A with odd rank");
        }
        let word: Vec<u8> = (0..n as u8).step_by(2).collect();
        let seed = sys.ext(sys.from_word(&word)?, DiagramAut::identity(n));
        return Ok(ScaledWSet::conjugacy_set(sys, &seed, c.cutoff)?);
    }
    let th = match &c.theta {
        Some(t) => theta(sys, t)?,
        None => DiagramAut::identity(sys.rank()),
    };
    let word = parse_word(c.seed.as_deref().unwrap_or(""), sys.rank())?;
    let seed = sys.ext(sys.from_word(&word)?, th);
    Ok(ScaledWSet::conjugacy_set(sys, &seed, c.cutoff)?)
}
