//! Construction of the four-parameter family `G(n,p,q,m)`.
//!
//! Vertices are `Z_n x Z_2p`; the four colour involutions are
//!
//! ```text
//! e0(i,j) = (i + m*sign(j-q), 1-j+2q)
//! e1(i,j) = (i, j-(-1)^j)
//! e2(i,j) = (i, j+(-1)^j)
//! e3(i,j) = (i + sign(j), 1-j)
//! ```
//!
//! with first coordinates mod `n`, second mod `2p`, and `sign(j) = +1`
//! exactly when the canonical representative of `j` lies in `[1,p]`.
//! Colours 1 and 2 cut the vertex set into `n` cycles of length `2p`;
//! colour 3 joins consecutive cycles and colour 0 joins cycles `m` apart.

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Color, ColoredGraph, ResidueCensus};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LmError {
    #[error("n and p must be positive")]
    NonPositive,
    #[error("n and p must be at most {MAX_PARAM}")]
    TooLarge,
    #[error("operation requires gcd(p,q)=1, got gcd({p},{q})={g}")]
    NotCoprime { p: u32, q: u32, g: u32 },
}

/// Bound keeping vertex indices inside `u32` and all modular arithmetic
/// inside `i64`.
pub const MAX_PARAM: u32 = 10_000;

/// The parameter 4-tuple `(n,p,q,m)`; `q` is stored canonically in
/// `[0,2p)` and `m` in `[0,n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LmParams {
    pub n: u32,
    pub p: u32,
    pub q: u32,
    pub m: u32,
}

impl LmParams {
    /// Accepts arbitrary representatives for `q` and `m` and reduces them.
    pub fn new(n: u32, p: u32, q: i64, m: i64) -> Result<Self, LmError> {
        if n == 0 || p == 0 {
            return Err(LmError::NonPositive);
        }
        if n > MAX_PARAM || p > MAX_PARAM {
            return Err(LmError::TooLarge);
        }
        Ok(Self {
            n,
            p,
            q: reduce(q, 2 * p),
            m: reduce(m, n),
        })
    }

    pub fn two_p(&self) -> u32 {
        2 * self.p
    }

    pub fn vertex_count(&self) -> usize {
        self.n as usize * self.two_p() as usize
    }

    /// Whether `gcd(p,q) = 1`, the standing assumption of the census and
    /// classification results. The builder itself accepts any `q`.
    pub fn coprime_pq(&self) -> bool {
        self.p.gcd(&self.q) == 1
    }

    /// `+1` if the canonical representative of `j` mod `2p` lies in
    /// `[1,p]`, `-1` otherwise. Satisfies `sign(j+p) = sign(1-j) = -sign(j)`.
    pub fn sign(&self, j: i64) -> i64 {
        let j = reduce(j, self.two_p()) as i64;
        if (1..=self.p as i64).contains(&j) {
            1
        } else {
            -1
        }
    }

    /// Image of the vertex `(i,j)` under the involution of colour `c`,
    /// reduced to canonical representatives.
    pub fn involution_image(&self, c: Color, i: i64, j: i64) -> (u32, u32) {
        let n = self.n;
        let two_p = self.two_p();
        let jj = reduce(j, two_p) as i64;
        let parity = if jj % 2 == 0 { 1i64 } else { -1 };
        let (ri, rj) = match c {
            0 => {
                let q = self.q as i64;
                let m = self.m as i64;
                (i + m * self.sign(jj - q), 1 - jj + 2 * q)
            }
            1 => (i, jj - parity),
            2 => (i, jj + parity),
            3 => (i + self.sign(jj), 1 - jj),
            _ => panic!("colour out of range"),
        };
        (reduce(ri, n), reduce(rj, two_p))
    }

    /// Dense vertex index `i*2p + j`; keeps each `{1,2}`-cycle contiguous.
    pub fn vertex_index(&self, i: u32, j: u32) -> usize {
        i as usize * self.two_p() as usize + j as usize
    }

    pub fn vertex_coords(&self, v: usize) -> (u32, u32) {
        let two_p = self.two_p() as usize;
        ((v / two_p) as u32, (v % two_p) as u32)
    }

    /// The other 4-tuple defining the identical graph: `(n,p,q+p,-m)`.
    pub fn twin(&self) -> LmParams {
        LmParams::new(
            self.n,
            self.p,
            self.q as i64 + self.p as i64,
            -(self.m as i64),
        )
        .expect("twin of valid params is valid")
    }

    /// `(-1)^q` as an element of `Z_n`: `1` for even `q`, `n-1` for odd.
    pub fn q_parity_unit(&self) -> u32 {
        if self.q % 2 == 0 {
            1 % self.n
        } else {
            (self.n - 1) % self.n
        }
    }
}

impl std::fmt::Display for LmParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "G({},{},{},{})", self.n, self.p, self.q, self.m)
    }
}

pub(crate) fn reduce(x: i64, modulus: u32) -> u32 {
    x.rem_euclid(modulus as i64) as u32
}

/// Builds the coloured graph on `2pn` vertices.
pub fn build(params: &LmParams) -> ColoredGraph {
    let count = params.vertex_count();
    let mut involutions: [Vec<u32>; 4] = Default::default();
    for c in 0..4u8 {
        involutions[c as usize] = (0..count)
            .map(|v| {
                let (i, j) = params.vertex_coords(v);
                let (ri, rj) = params.involution_image(c, i as i64, j as i64);
                params.vertex_index(ri, rj) as u32
            })
            .collect();
    }
    ColoredGraph::new(involutions).expect("Lins-Mandel involutions are fixed-point-free")
}

/// Equality of labelled graphs: the involution tables coincide
/// vertex-for-vertex. Not isomorphism.
pub fn graphs_equal(a: &LmParams, b: &LmParams) -> bool {
    if a.vertex_count() != b.vertex_count() {
        return false;
    }
    build(a) == build(b)
}

/// The graph encodes a closed 3-manifold iff, after dividing `(p,q)` by
/// their common factor, `p` is even or `m` is `0` or `(-1)^q`. The parity
/// dichotomy requires `gcd(p,q)=1` (for `G(3,2,0,2)` the raw reading
/// fails: one tricoloured residue is a torus); the reduction preserves
/// the encoded space, and the sphere-residue oracle confirms the combined
/// criterion on every surveyed tuple.
pub fn is_gem_parametric(params: &LmParams) -> bool {
    let g = params.p.gcd(&params.q);
    let p = params.p / g;
    let q = params.q / g;
    let unit = if q % 2 == 0 {
        1 % params.n
    } else {
        (params.n - 1) % params.n
    };
    p % 2 == 0 || params.m == 0 || params.m == unit
}

/// The residue census predicted from the parameters alone. Only stated
/// under the standing assumption `gcd(p,q)=1`; refuses other input.
pub fn predicted_census(params: &LmParams) -> Result<ResidueCensus, LmError> {
    if !params.coprime_pq() {
        return Err(LmError::NotCoprime {
            p: params.p,
            q: params.q,
            g: params.p.gcd(&params.q),
        });
    }
    let n = params.n as usize;
    let p = params.p as usize;
    let two_p = 2 * p;
    let g_m = (params.n.gcd(&params.m)) as usize; // gcd(n,0) = n
    let runs_01: Vec<(usize, usize)>;
    let runs_02: Vec<(usize, usize)>;
    let runs_03: Vec<(usize, usize)>;
    let runs_12 = vec![(n, two_p)];
    let runs_13: Vec<(usize, usize)>;
    let runs_23: Vec<(usize, usize)>;
    if p % 2 == 0 {
        let quads = n * (p - 2) / 2;
        runs_01 = vec![(2 * g_m, 2 * n / g_m), (quads, 4)];
        runs_02 = vec![(n * p / 2, 4)];
        runs_03 = vec![(n, two_p)];
        runs_13 = vec![(n * p / 2, 4)];
        runs_23 = vec![(2, 2 * n), (quads, 4)];
    } else {
        let quads = n * (p - 1) / 2;
        let unit = params.q_parity_unit() as i64;
        let g_03 = reduce(params.m as i64 - unit, params.n).gcd(&params.n) as usize;
        runs_01 = vec![(g_m, 2 * n / g_m), (quads, 4)];
        runs_02 = vec![(g_m, 2 * n / g_m), (quads, 4)];
        runs_03 = vec![(g_03, two_p * n / g_03)];
        runs_13 = vec![(1, 2 * n), (quads, 4)];
        runs_23 = vec![(1, 2 * n), (quads, 4)];
    }
    Ok(ResidueCensus::from_runs([
        &runs_01, &runs_02, &runs_03, &runs_12, &runs_13, &runs_23,
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn params(n: u32, p: u32, q: i64, m: i64) -> LmParams {
        LmParams::new(n, p, q, m).unwrap()
    }

    #[test]
    fn sign_function_values() {
        let pr = params(1, 3, 0, 0);
        assert_eq!(pr.sign(1), 1);
        assert_eq!(pr.sign(3), 1);
        assert_eq!(pr.sign(0), -1);
        assert_eq!(pr.sign(4), -1);
    }

    #[test]
    fn sign_antisymmetry() {
        for p in 1..8u32 {
            let pr = params(1, p, 0, 0);
            for j in 0..2 * p as i64 {
                assert_eq!(pr.sign(j + p as i64), -pr.sign(j));
                assert_eq!(pr.sign(1 - j), -pr.sign(j));
            }
        }
    }

    #[test]
    fn involution_image_hand_checked() {
        let pr = params(5, 3, 2, 1);
        // sign(0-2) = sign(4) = -1, so e0(0,0) = (0-1, 1+4) = (4,5)
        assert_eq!(pr.involution_image(0, 0, 0), (4, 5));
        // sign(1) = +1, so e3(0,1) = (1, 0)
        assert_eq!(pr.involution_image(3, 0, 1), (1, 0));
    }

    #[test]
    fn builds_figure_sized_graphs() {
        let g = build(&params(5, 3, 2, 1));
        assert_eq!(g.vertex_count(), 30);
        assert!(g.is_connected());
        assert!(g.is_bipartite());

        let g = build(&params(3, 7, 4, 1));
        assert_eq!(g.vertex_count(), 42);
        assert!(g.is_connected());
        assert!(g.is_bipartite());
    }

    #[test]
    fn colour12_cycles_have_length_two_p() {
        for (n, p, q, m) in [(5, 3, 2, 1), (3, 4, 1, 1), (4, 5, 3, 2), (1, 1, 0, 0)] {
            let pr = params(n, p, q, m);
            let comps = build(&pr).residues(&[1, 2]).unwrap();
            assert_eq!(comps.len(), n as usize);
            assert!(comps.iter().all(|c| c.len() == 2 * p as usize));
        }
    }

    #[test]
    fn residue_component_examples() {
        // 3 components of size 8 over colours {1,2}
        let comps = build(&params(3, 4, 1, 1)).residues(&[1, 2]).unwrap();
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(|c| c.len() == 8));

        // one {0,1}-residue of size 10 plus five of size 4
        let mut sizes: Vec<usize> = build(&params(5, 3, 2, 1))
            .residues(&[0, 1])
            .unwrap()
            .iter()
            .map(|c| c.len())
            .collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![4, 4, 4, 4, 4, 10]);
    }

    #[test]
    fn census_examples() {
        let census = build(&params(3, 4, 1, 1)).census();
        assert_eq!(census.at(1, 3), &[4, 4, 4, 4, 4, 4]);
        assert_eq!(census.at(2, 3), &[4, 4, 4, 6, 6]);
        assert_eq!(census.at(0, 1), &[4, 4, 4, 6, 6]);
    }

    #[test]
    fn predicted_census_examples() {
        let c = predicted_census(&params(3, 4, 1, 1)).unwrap();
        assert_eq!(c.at(0, 1), &[4, 4, 4, 6, 6]);
        let c = predicted_census(&params(5, 3, 2, 1)).unwrap();
        assert_eq!(c.at(0, 3), &[6, 6, 6, 6, 6]);
    }

    #[test]
    fn predicted_census_refuses_non_coprime() {
        assert_eq!(
            predicted_census(&params(3, 4, 2, 1)).unwrap_err(),
            LmError::NotCoprime { p: 4, q: 2, g: 2 }
        );
    }

    #[test]
    fn gem_examples() {
        assert!(is_gem_parametric(&params(3, 4, 1, 2)));
        assert!(is_gem_parametric(&params(5, 3, 2, 1)));
        assert!(!is_gem_parametric(&params(4, 3, 1, 2)));
        // cross-check the failing case against the direct oracle
        assert!(!build(&params(4, 3, 1, 2)).is_gem().unwrap());
    }

    #[test]
    fn gem_criterion_reduces_shared_factors() {
        // (p,q)=(2,0) reduces to (1,0): p even no longer decides
        assert!(!is_gem_parametric(&params(3, 2, 0, 2)));
        assert!(!build(&params(3, 2, 0, 2)).is_gem().unwrap());
        assert!(is_gem_parametric(&params(3, 2, 0, 1)));
        assert!(build(&params(3, 2, 0, 1)).is_gem().unwrap());
    }

    #[test]
    fn twin_graphs_are_equal() {
        for (n, p, q, m) in [(5, 3, 2, 1), (3, 4, 1, 2), (2, 5, 1, 1), (1, 1, 0, 0)] {
            let a = params(n, p, q, m);
            assert!(graphs_equal(&a, &a.twin()));
        }
        assert!(!graphs_equal(&params(3, 4, 1, 1), &params(3, 4, 3, 1)));
    }

    proptest! {
        #[test]
        fn build_is_total_and_sound(n in 1u32..7, p in 1u32..7, q in 0i64..16, m in 0i64..8) {
            let pr = params(n, p, q, m);
            // ColoredGraph::new validates fixed-point-free involutions
            let g = build(&pr);
            prop_assert_eq!(g.vertex_count(), pr.vertex_count());
            prop_assert!(g.is_connected());
            prop_assert!(g.is_bipartite());
            prop_assert!(graphs_equal(&pr, &pr.twin()));
        }

        #[test]
        fn census_matches_prediction(n in 1u32..7, p in 1u32..7, q in 0i64..16, m in 0i64..8) {
            let pr = params(n, p, q, m);
            if pr.coprime_pq() {
                let predicted = predicted_census(&pr).unwrap();
                prop_assert_eq!(predicted, build(&pr).census());
            }
        }

        #[test]
        fn census_lengths_sum_to_vertex_count(n in 1u32..6, p in 1u32..6, q in 0i64..12, m in 0i64..6) {
            let pr = params(n, p, q, m);
            let census = build(&pr).census();
            for lengths in &census.lengths {
                prop_assert_eq!(lengths.iter().sum::<usize>(), pr.vertex_count());
                prop_assert!(lengths.iter().all(|&l| l >= 2 && l % 2 == 0));
            }
        }
    }
}
