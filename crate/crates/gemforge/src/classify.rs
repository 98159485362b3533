//! Parameter-level isomorphism criteria.
//!
//! For `n,p >= 3` the isomorphism class of `G(n,p,q,m)` is decided by
//! modular arithmetic alone: `(n,p)` is rigid, and the admissible changes
//! of `(q,m)` depend on the parity of `p` and on whether `m` is a unit
//! mod `n`. The exhaustive propagation search in [`crate::iso`] is the
//! independent oracle for everything in this module.

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::graph::ResidueCensus;
use crate::lins_mandel::{reduce, LmParams};
use crate::modular::mod_inverse;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("classification requires n,p >= 3 (n={n}, p={p})")]
    ParamsTooSmall { n: u32, p: u32 },
    #[error("classification requires gcd(p,q)=1 for {0}")]
    NotCoprime(LmParams),
    #[error("the m-class partition is stated for p even (p={0})")]
    PMustBeEven(u32),
}

/// Which classification branch produced the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// `p` even, `gcd(n,m) != 1`: `q` may change to `±q^{±1}` keeping `m`,
    /// or to `±q^{±1}+p` negating `m`.
    PEvenSharedFactor,
    /// `p` even, `gcd(n,m) = 1`: as above with `m` also invertible.
    PEvenCoprime,
    /// `p` odd with `m = (-1)^q` on both sides: `q' = ±q^{±1} mod p`.
    POdd,
    /// The two 4-tuples define the identical graph.
    EqualByTwin,
    /// The criteria do not cover these parameters.
    OutOfScope,
}

/// Tri-state verdict: `isomorphic` is absent exactly when the rule is
/// [`Rule::OutOfScope`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoVerdict {
    pub isomorphic: Option<bool>,
    pub rule: Rule,
    pub matched_condition: String,
}

impl IsoVerdict {
    fn decided(isomorphic: bool, rule: Rule, matched: impl Into<String>) -> Self {
        Self {
            isomorphic: Some(isomorphic),
            rule,
            matched_condition: matched.into(),
        }
    }

    fn out_of_scope(reason: impl Into<String>) -> Self {
        Self {
            isomorphic: None,
            rule: Rule::OutOfScope,
            matched_condition: reason.into(),
        }
    }
}

/// The `(n,p)` rigidity check: for `n,p >= 3` the `{1,2}`-residue profile
/// (`n` cycles of length `2p`) pins both parameters, so graphs with
/// different `(n,p)` cannot be isomorphic. Both census arguments must come
/// from the graphs under comparison; parameters below 3 are out of scope
/// (e.g. `G(2,p,q,1)` and `G(p,2,1,q)` are isomorphic with swapped roles).
pub fn rigidity(
    census_a: &ResidueCensus,
    census_b: &ResidueCensus,
    n: u32,
    p: u32,
    n2: u32,
    p2: u32,
) -> Result<bool, ClassifyError> {
    for (nn, pp) in [(n, p), (n2, p2)] {
        if nn < 3 || pp < 3 {
            return Err(ClassifyError::ParamsTooSmall { n: nn, p: pp });
        }
    }
    let compatible = (n, p) == (n2, p2);
    debug_assert_eq!(
        compatible,
        census_a.at(1, 2) == census_b.at(1, 2),
        "{{1,2}}-residue profile must pin (n,p) for n,p >= 3"
    );
    Ok(compatible)
}

/// Decides isomorphism of `G(a)` and `G(b)` from the parameters alone.
///
/// Preconditions (hard errors): `n,p >= 3` and `gcd(p,q) = 1` on both
/// sides. Out-of-scope verdict: `p` odd with `m` different from `(-1)^q`.
/// `q`-conditions are evaluated mod `2p` for `p` even and mod `p` for `p`
/// odd; `m`-conditions mod `n`.
pub fn classify_pair(a: &LmParams, b: &LmParams) -> Result<IsoVerdict, ClassifyError> {
    for x in [a, b] {
        if x.n < 3 || x.p < 3 {
            return Err(ClassifyError::ParamsTooSmall { n: x.n, p: x.p });
        }
        if !x.coprime_pq() {
            return Err(ClassifyError::NotCoprime(*x));
        }
    }
    for x in [a, b] {
        if x.p % 2 == 1 && x.m != x.q_parity_unit() {
            return Ok(IsoVerdict::out_of_scope(format!(
                "p odd requires m = (-1)^q, got {x}"
            )));
        }
    }
    let rule = if a.p % 2 == 1 {
        Rule::POdd
    } else if a.n.gcd(&a.m) != 1 {
        Rule::PEvenSharedFactor
    } else {
        Rule::PEvenCoprime
    };
    if (a.n, a.p) != (b.n, b.p) {
        return Ok(IsoVerdict::decided(false, rule, "n' = n, p' = p fails"));
    }
    if (b.q, b.m) == (a.q, a.m) {
        return Ok(IsoVerdict::decided(
            true,
            Rule::EqualByTwin,
            "identical parameters",
        ));
    }
    let twin = a.twin();
    if (b.q, b.m) == (twin.q, twin.m) {
        return Ok(IsoVerdict::decided(
            true,
            Rule::EqualByTwin,
            "q' = q+p, m' = -m",
        ));
    }

    if a.p % 2 == 1 {
        // p odd: q' = ±q^{±1} mod p
        let p = a.p as i64;
        let q = (a.q % a.p) as i64;
        let q_inv = mod_inverse(q, p).expect("gcd(p,q)=1");
        let target = (b.q % b.p) as i64;
        for (label, value) in [
            ("q' = q (mod p)", q),
            ("q' = -q (mod p)", -q),
            ("q' = q^-1 (mod p)", q_inv),
            ("q' = -q^-1 (mod p)", -q_inv),
        ] {
            if target == value.rem_euclid(p) {
                return Ok(IsoVerdict::decided(true, rule, label));
            }
        }
        return Ok(IsoVerdict::decided(false, rule, "q' != ±q^{±1} mod p"));
    }

    // p even: q is odd (gcd(p,q)=1), hence invertible mod 2p
    let two_p = a.two_p() as i64;
    let n = a.n as i64;
    let q = a.q as i64;
    let m = a.m as i64;
    let q_inv = mod_inverse(q, two_p).expect("q odd is a unit mod 2p");
    let q_conditions = [
        ("q' = q", q),
        ("q' = -q", -q),
        ("q' = q^-1", q_inv),
        ("q' = -q^-1", -q_inv),
    ];
    let m_same: Vec<(&str, i64)>;
    let m_negated: Vec<(&str, i64)>;
    if rule == Rule::PEvenCoprime {
        let m_inv = mod_inverse(m, n).expect("gcd(n,m)=1");
        m_same = vec![("m' = m", m), ("m' = m^-1", m_inv)];
        m_negated = vec![("m' = -m", -m), ("m' = -m^-1", -m_inv)];
    } else {
        m_same = vec![("m' = m", m)];
        m_negated = vec![("m' = -m", -m)];
    }
    for (shift, shift_label, m_conditions) in [(0, "", &m_same), (a.p as i64, "+p", &m_negated)] {
        for &(q_label, q_value) in &q_conditions {
            if b.q as i64 != (q_value + shift).rem_euclid(two_p) {
                continue;
            }
            for &(m_label, m_value) in m_conditions {
                if b.m as i64 == m_value.rem_euclid(n) {
                    return Ok(IsoVerdict::decided(
                        true,
                        rule,
                        format!("{q_label}{shift_label}, {m_label}"),
                    ));
                }
            }
        }
    }
    Ok(IsoVerdict::decided(false, rule, "no branch matched"))
}

/// Whether `q^2 = p±1` holds mod `2p`; equivalent to `q = ±q^{-1}+p`, the
/// condition under which negating `m` preserves the isomorphism class at
/// fixed `q`.
pub fn q_square_is_p_plus_minus_one(p: u32, q: u32) -> bool {
    let two_p = 2 * p as i64;
    let sq = (q as i64 * q as i64).rem_euclid(two_p);
    sq == (p as i64 + 1).rem_euclid(two_p) || sq == (p as i64 - 1).rem_euclid(two_p)
}

/// Partition of `Z_n - {0}` into isomorphism classes of `m` at fixed
/// `(n,p,q)` with `p` even: classes are `{m}`, `{±m}`, `{m^{±1}}` or
/// `{±m^{±1}}` depending on `gcd(n,m)` and on `q^2 = p±1`.
pub fn m_classes(n: u32, p: u32, q: u32) -> Result<Vec<Vec<u32>>, ClassifyError> {
    if n < 3 || p < 3 {
        return Err(ClassifyError::ParamsTooSmall { n, p });
    }
    if p % 2 == 1 {
        return Err(ClassifyError::PMustBeEven(p));
    }
    let params = LmParams::new(n, p, q as i64, 0).expect("positive n,p");
    if !params.coprime_pq() {
        return Err(ClassifyError::NotCoprime(params));
    }
    let special = q_square_is_p_plus_minus_one(p, params.q);
    let class_of = |m: u32| -> Vec<u32> {
        let mut class = vec![m];
        if special {
            class.push(reduce(-(m as i64), n));
        }
        if let Some(inv) = mod_inverse(m as i64, n as i64) {
            class.push(inv as u32);
            if special {
                class.push(reduce(-inv, n));
            }
        }
        class.sort_unstable();
        class.dedup();
        class
    };
    let mut seen = vec![false; n as usize];
    let mut classes = Vec::new();
    for m in 1..n {
        if seen[m as usize] {
            continue;
        }
        let class = class_of(m);
        for &x in &class {
            debug_assert!(!seen[x as usize] || x == m);
            seen[x as usize] = true;
            debug_assert_eq!(class_of(x), class, "m-classes must be consistent");
        }
        classes.push(class);
    }
    Ok(classes)
}
