//! Universal Coxeter groups: all off-diagonal orders infinite, so every
//! element has exactly one reduced word and multiplication is free
//! cancellation of equal adjacent letters.

/// Reduce a word by cancelling adjacent equal letters.
pub fn reduce(word: &[u8]) -> Vec<u8> {
    let mut out: Vec<u8> = Vec::with_capacity(word.len());
    for &s in word {
        if out.last() == Some(&s) {
            out.pop();
        } else {
            out.push(s);
        }
    }
    out
}

pub fn multiply(a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut out = a.to_vec();
    for &s in b {
        if out.last() == Some(&s) {
            out.pop();
        } else {
            out.push(s);
        }
    }
    out
}

pub fn inverse(a: &[u8]) -> Vec<u8> {
    a.iter().rev().copied().collect()
}

/// Subword property on unique reduced words.
pub fn bruhat_leq(x: &[u8], y: &[u8]) -> bool {
    let mut it = y.iter();
    x.iter().all(|s| it.any(|t| t == s))
}

/// All reflections `u s u⁻¹` of length at most `max_len`, in shortlex order.
pub fn reflections_up_to(rank: usize, max_len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    // Prefixes u (reduced words) with 2|u|+1 <= max_len.
    let mut layer: Vec<Vec<u8>> = vec![Vec::new()];
    let mut depth = 0;
    while 2 * depth < max_len {
        for u in &layer {
            for s in 0..rank as u8 {
                if u.last() == Some(&s) {
                    continue;
                }
                let mut r = u.clone();
                r.push(s);
                r.extend(u.iter().rev());
                out.push(r);
            }
        }
        let mut next = Vec::new();
        for u in &layer {
            for s in 0..rank as u8 {
                if u.last() != Some(&s) {
                    let mut w = u.clone();
                    w.push(s);
                    next.push(w);
                }
            }
        }
        layer = next;
        depth += 1;
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}
