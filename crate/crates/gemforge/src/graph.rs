//! Generic 4-coloured graphs given by fixed-point-free involutions.
//!
//! A graph on vertices `0..vertex_count` carries one involution per colour
//! `0..=3`; the `c`-edges are the orbits `{v, involution[c](v)}`. Parallel
//! edges of different colours are allowed (degenerate parameters force
//! coinciding involutions), so edges are never materialized as a set.

use serde::Serialize;
use thiserror::Error;

/// Edge colours are `0..=3`.
pub type Color = u8;

/// The six unordered colour pairs, in the fixed order used everywhere
/// (census tables, cell indexing, report output).
pub const COLOR_PAIRS: [(Color, Color); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// The four 3-element colour sets, ordered lexicographically.
pub const COLOR_TRIPLES: [[Color; 3]; 4] = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("involution of colour {colour} has a fixed point at vertex {vertex}")]
    FixedPoint { colour: Color, vertex: usize },
    #[error("map of colour {colour} is not an involution at vertex {vertex}")]
    NotInvolution { colour: Color, vertex: usize },
    #[error("involution of colour {colour} maps vertex {vertex} out of range")]
    OutOfRange { colour: Color, vertex: usize },
    #[error("involution of colour {colour} has wrong length")]
    WrongLength { colour: Color },
    #[error("colour set is empty")]
    EmptyColorSet,
    #[error("graph is disconnected")]
    Disconnected,
}

/// A finite 4-regular properly edge-4-coloured multigraph, immutable after
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    vertex_count: usize,
    involutions: [Vec<u32>; 4],
}

impl ColoredGraph {
    /// Builds a graph from four involution tables, checking that each is a
    /// fixed-point-free involution on `0..len`.
    pub fn new(involutions: [Vec<u32>; 4]) -> Result<Self, GraphError> {
        let vertex_count = involutions[0].len();
        for (c, inv) in involutions.iter().enumerate() {
            let colour = c as Color;
            if inv.len() != vertex_count {
                return Err(GraphError::WrongLength { colour });
            }
            for v in 0..vertex_count {
                let w = inv[v] as usize;
                if w >= vertex_count {
                    return Err(GraphError::OutOfRange { colour, vertex: v });
                }
                if w == v {
                    return Err(GraphError::FixedPoint { colour, vertex: v });
                }
                if inv[w] as usize != v {
                    return Err(GraphError::NotInvolution { colour, vertex: v });
                }
            }
        }
        Ok(Self {
            vertex_count,
            involutions,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Image of `v` under the involution of colour `c`.
    pub fn apply(&self, c: Color, v: usize) -> usize {
        self.involutions[c as usize][v] as usize
    }

    pub fn involution(&self, c: Color) -> &[u32] {
        &self.involutions[c as usize]
    }

    /// Connected components of the subgraph spanned by `colours`, each
    /// sorted, ordered by least vertex.
    pub fn residues(&self, colours: &[Color]) -> Result<Vec<Vec<usize>>, GraphError> {
        if colours.is_empty() {
            return Err(GraphError::EmptyColorSet);
        }
        let mut seen = vec![false; self.vertex_count];
        let mut components = Vec::new();
        for start in 0..self.vertex_count {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &c in colours {
                    let w = self.apply(c, v);
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        Ok(components)
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        self.residues(&[0, 1, 2, 3])
            .map(|c| c.len() == 1)
            .unwrap_or(false)
    }

    /// Cycle-length multiset for every colour pair.
    pub fn census(&self) -> ResidueCensus {
        let mut lengths: [Vec<usize>; 6] = Default::default();
        for (idx, &(a, b)) in COLOR_PAIRS.iter().enumerate() {
            let comps = self.residues(&[a, b]).expect("pair is nonempty");
            let mut ls: Vec<usize> = comps.iter().map(|c| c.len()).collect();
            ls.sort_unstable();
            lengths[idx] = ls;
        }
        ResidueCensus { lengths }
    }

    /// True iff the underlying multigraph is 2-colourable.
    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![u8::MAX; self.vertex_count];
        for start in 0..self.vertex_count {
            if side[start] != u8::MAX {
                continue;
            }
            side[start] = 0;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for c in 0..4 {
                    let w = self.apply(c, v);
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[v];
                        stack.push(w);
                    } else if side[w] == side[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Direct manifold oracle: the graph encodes a closed 3-manifold iff
    /// every 3-coloured residue triangulates the 2-sphere, i.e. has Euler
    /// characteristic `#bicoloured cycles - 3|R|/2 + |R| = 2`.
    pub fn is_gem(&self) -> Result<bool, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        for triple in COLOR_TRIPLES {
            for comp in self.residues(&triple)? {
                let verts = comp.len();
                // Count bicoloured cycles inside this residue, one pair at
                // a time; restricting the traversal to `comp` is enough
                // because the component is closed under all three colours.
                let mut cycles = 0usize;
                for i in 0..3 {
                    for j in (i + 1)..3 {
                        cycles += count_cycles_within(self, triple[i], triple[j], &comp);
                    }
                }
                let chi = cycles as i64 - (3 * verts as i64) / 2 + verts as i64;
                if chi != 2 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn count_cycles_within(g: &ColoredGraph, a: Color, b: Color, comp: &[usize]) -> usize {
    let mut seen = std::collections::HashSet::new();
    let mut cycles = 0;
    for &start in comp {
        if seen.contains(&start) {
            continue;
        }
        cycles += 1;
        // walk the bicoloured cycle through `start`
        let mut v = start;
        loop {
            seen.insert(v);
            let w = g.apply(a, v);
            seen.insert(w);
            v = g.apply(b, w);
            if v == start {
                break;
            }
        }
    }
    cycles
}

/// Multiset of bicoloured-cycle lengths per colour pair; lengths are sorted
/// ascending so equality is multiset equality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueCensus {
    /// Indexed like [`COLOR_PAIRS`].
    pub lengths: [Vec<usize>; 6],
}

impl ResidueCensus {
    pub fn pair_index(a: Color, b: Color) -> usize {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        COLOR_PAIRS
            .iter()
            .position(|&p| p == (a, b))
            .expect("valid colour pair")
    }

    pub fn at(&self, a: Color, b: Color) -> &[usize] {
        &self.lengths[Self::pair_index(a, b)]
    }

    /// Builds a census from (count, length) runs per pair.
    pub fn from_runs(runs: [&[(usize, usize)]; 6]) -> Self {
        let mut lengths: [Vec<usize>; 6] = Default::default();
        for (idx, run) in runs.iter().enumerate() {
            let mut ls = Vec::new();
            for &(count, len) in *run {
                ls.extend(std::iter::repeat_n(len, count));
            }
            ls.sort_unstable();
            lengths[idx] = ls;
        }
        ResidueCensus { lengths }
    }
}

impl std::fmt::Display for ResidueCensus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (idx, &(a, b)) in COLOR_PAIRS.iter().enumerate() {
            writeln!(f, "{{{a},{b}}}: {:?}", self.lengths[idx])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two vertices joined by all four colours; encodes the 3-sphere.
    pub(crate) fn two_vertex_graph() -> ColoredGraph {
        let swap = vec![1u32, 0u32];
        ColoredGraph::new([swap.clone(), swap.clone(), swap.clone(), swap]).unwrap()
    }

    #[test]
    fn rejects_fixed_points() {
        let id = vec![0u32, 1];
        let swap = vec![1u32, 0];
        let err = ColoredGraph::new([id, swap.clone(), swap.clone(), swap]).unwrap_err();
        assert_eq!(
            err,
            GraphError::FixedPoint {
                colour: 0,
                vertex: 0
            }
        );
    }

    #[test]
    fn rejects_non_involutions() {
        let cycle = vec![1u32, 2, 0, 3];
        let swap = vec![1u32, 0, 3, 2];
        let err = ColoredGraph::new([cycle, swap.clone(), swap.clone(), swap]).unwrap_err();
        assert!(matches!(err, GraphError::NotInvolution { colour: 0, .. }));
    }

    #[test]
    fn two_vertex_census_is_all_two_cycles() {
        let g = two_vertex_graph();
        let census = g.census();
        for idx in 0..6 {
            assert_eq!(census.lengths[idx], vec![2]);
        }
    }

    #[test]
    fn two_vertex_graph_is_gem_and_bipartite() {
        let g = two_vertex_graph();
        assert!(g.is_connected());
        assert!(g.is_bipartite());
        assert!(g.is_gem().unwrap());
    }

    #[test]
    fn empty_colour_set_is_an_error() {
        let g = two_vertex_graph();
        assert_eq!(g.residues(&[]).unwrap_err(), GraphError::EmptyColorSet);
    }

    #[test]
    fn disconnected_input_rejected_by_gem_oracle() {
        // two disjoint copies of the 2-vertex graph
        let swap = vec![1u32, 0, 3, 2];
        let g = ColoredGraph::new([swap.clone(), swap.clone(), swap.clone(), swap]).unwrap();
        assert!(!g.is_connected());
        assert_eq!(g.is_gem().unwrap_err(), GraphError::Disconnected);
    }
}
