//! Modular inverses via the extended Euclidean algorithm.

/// Returns `(g, x, y)` with `a*x + b*y = g = gcd(a,b)`, `g >= 0`.
pub(crate) fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = extended_gcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

/// Inverse of `a` modulo `modulus >= 1`, canonical in `[0, modulus)`;
/// `None` when `gcd(a, modulus) != 1`. Everything is invertible mod 1.
pub(crate) fn mod_inverse(a: i64, modulus: i64) -> Option<i64> {
    assert!(modulus >= 1);
    if modulus == 1 {
        return Some(0);
    }
    let (g, x, _) = extended_gcd(a.rem_euclid(modulus), modulus);
    if g == 1 {
        Some(x.rem_euclid(modulus))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(3, 16), Some(11));
        assert_eq!(mod_inverse(2, 5), Some(3));
        assert_eq!(mod_inverse(2, 16), None);
        assert_eq!(mod_inverse(0, 1), Some(0));
        assert_eq!(mod_inverse(-3, 16), Some(5));
        for modulus in 1..30i64 {
            for a in 0..modulus {
                if let Some(inv) = mod_inverse(a, modulus) {
                    assert_eq!((a * inv).rem_euclid(modulus), 1 % modulus);
                }
            }
        }
    }
}
