//! First integral homology of the encoded space.
//!
//! The pseudocomplex of a 4-coloured graph has one tetrahedron per graph
//! vertex, one triangle per edge, one edge per bicoloured cycle and one
//! vertex per tricoloured residue. Attaching 3-cells never changes the
//! fundamental group, so H1 is read off the 2-skeleton: a spanning tree of
//! the (0,1)-skeleton gives a presentation whose relators are the triangle
//! boundary walks, and the abelianization is put into invariant-factor
//! form by an exact Smith reduction. No simplex orientations are ever
//! chosen; each 1-cell just gets a fixed traversal direction.

use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Color, ColoredGraph, GraphError, COLOR_PAIRS, COLOR_TRIPLES};
use crate::snf::smith_normal_form;
use crate::HomologyInt;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph does not encode a manifold; homology is out of contract")]
    NotGem,
}

/// A finitely generated abelian group in canonical invariant-factor form:
/// free rank plus torsion coefficients `d1 | d2 | ...`, each >= 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: u64) -> Self {
        if order <= 1 {
            Self::trivial()
        } else {
            Self {
                rank: 0,
                torsion: vec![order],
            }
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z_{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// One cell per connected residue: `triple`/`pair` index the colour set,
/// `vertices` the graph vertices it spans.
#[derive(Debug, Clone)]
pub struct ZeroCell {
    pub triple: usize,
    pub vertices: Vec<usize>,
}

/// A bicoloured cycle; `ends` are the ids of the two 0-cells containing it
/// (the two colour triples extending the pair), in ascending order. That
/// order is the cell's traversal direction.
#[derive(Debug, Clone)]
pub struct OneCell {
    pub pair: usize,
    pub vertices: Vec<usize>,
    pub ends: [usize; 2],
}

/// A triangle, one per graph edge. Its boundary is the closed 3-walk in
/// the (0,1)-skeleton recorded in `steps`.
#[derive(Debug, Clone)]
pub struct TwoCell {
    pub colour: Color,
    pub vertex: usize,
    pub steps: [WalkStep; 3],
}

#[derive(Debug, Clone, Copy)]
pub struct WalkStep {
    pub one_cell: usize,
    /// Whether the walk traverses the 1-cell along its own direction.
    pub forward: bool,
}

#[derive(Debug, Clone)]
pub struct FacePoset {
    pub zero_cells: Vec<ZeroCell>,
    pub one_cells: Vec<OneCell>,
    pub two_cells: Vec<TwoCell>,
    pub three_cell_count: usize,
    /// 0-cell chosen as the base point: least cell containing vertex 0.
    pub base: usize,
}

/// Builds the face poset of the pseudocomplex.
pub fn face_poset(g: &ColoredGraph) -> Result<FacePoset, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let count = g.vertex_count();

    let mut zero_cells = Vec::new();
    // triple index, vertex -> 0-cell id
    let mut zero_of = vec![[usize::MAX; 4]; count];
    for (t, triple) in COLOR_TRIPLES.iter().enumerate() {
        for comp in g.residues(triple)? {
            let id = zero_cells.len();
            for &v in &comp {
                zero_of[v][t] = id;
            }
            zero_cells.push(ZeroCell {
                triple: t,
                vertices: comp,
            });
        }
    }

    let mut one_cells = Vec::new();
    let mut one_of = vec![[usize::MAX; 6]; count];
    for (pi, &(a, b)) in COLOR_PAIRS.iter().enumerate() {
        // the two triples extending this pair, in index order
        let ts: Vec<usize> = COLOR_TRIPLES
            .iter()
            .enumerate()
            .filter(|(_, t)| t.contains(&a) && t.contains(&b))
            .map(|(i, _)| i)
            .collect();
        debug_assert_eq!(ts.len(), 2);
        for comp in g.residues(&[a, b])? {
            let id = one_cells.len();
            let v0 = comp[0];
            let ends = [zero_of[v0][ts[0]], zero_of[v0][ts[1]]];
            for &v in &comp {
                one_of[v][pi] = id;
            }
            one_cells.push(OneCell {
                pair: pi,
                vertices: comp,
                ends,
            });
        }
    }

    let mut two_cells = Vec::new();
    for c in 0..4u8 {
        for v in 0..count {
            if g.apply(c, v) < v {
                continue; // one triangle per edge
            }
            two_cells.push(triangle(c, v, &zero_of, &one_of, &one_cells));
        }
    }

    let base = (0..4)
        .map(|t| zero_of[0][t])
        .min()
        .expect("vertex 0 exists");
    Ok(FacePoset {
        zero_cells,
        one_cells,
        two_cells,
        three_cell_count: count,
        base,
    })
}

/// The boundary walk of the triangle dual to the `c`-edge at `v`. With
/// `{a,b,d}` the other colours in ascending order, the walk visits the
/// residues `{c,a,b} -> {c,a,d} -> {c,b,d}` along the `{c,a}`-, `{c,d}`-
/// and `{c,b}`-cycles through `v`.
fn triangle(
    c: Color,
    v: usize,
    zero_of: &[[usize; 4]],
    one_of: &[[usize; 6]],
    one_cells: &[OneCell],
) -> TwoCell {
    let others: Vec<Color> = (0..4u8).filter(|&x| x != c).collect();
    let (a, b, d) = (others[0], others[1], others[2]);
    let triple_id = |x: Color, y: Color, z: Color| -> usize {
        let mut t = [x, y, z];
        t.sort_unstable();
        COLOR_TRIPLES.iter().position(|&s| s == t).expect("triple")
    };
    let pair_id = |x: Color, y: Color| -> usize {
        COLOR_PAIRS
            .iter()
            .position(|&(s, t)| (s, t) == (x.min(y), x.max(y)))
            .expect("pair")
    };
    let nodes = [
        zero_of[v][triple_id(c, a, b)],
        zero_of[v][triple_id(c, a, d)],
        zero_of[v][triple_id(c, b, d)],
    ];
    let edges = [
        one_of[v][pair_id(c, a)],
        one_of[v][pair_id(c, d)],
        one_of[v][pair_id(c, b)],
    ];
    let mut steps = [WalkStep {
        one_cell: 0,
        forward: true,
    }; 3];
    for s in 0..3 {
        let from = nodes[s];
        let to = nodes[(s + 1) % 3];
        let cell = &one_cells[edges[s]];
        let forward = if cell.ends == [from, to] {
            true
        } else {
            debug_assert_eq!(cell.ends, [to, from], "walk must follow incidences");
            false
        };
        steps[s] = WalkStep {
            one_cell: edges[s],
            forward,
        };
    }
    TwoCell {
        colour: c,
        vertex: v,
        steps,
    }
}

/// How the spanning tree of the (0,1)-skeleton is grown; H1 must not
/// depend on the choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeStrategy {
    BreadthFirst,
    DepthFirst,
}

/// Presentation of the fundamental group: generators are the 1-cells
/// outside a spanning tree, relators the triangle boundary words with
/// tree edges deleted (so every relator has length <= 3).
#[derive(Debug, Clone)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Vec<(usize, i8)>>,
}

pub fn pi1_presentation(fp: &FacePoset, strategy: TreeStrategy) -> Presentation {
    // adjacency of the (0,1)-skeleton, neighbours sorted by 1-cell id
    let mut adjacency = vec![Vec::new(); fp.zero_cells.len()];
    for (id, cell) in fp.one_cells.iter().enumerate() {
        let [u, w] = cell.ends;
        adjacency[u].push((id, w));
        adjacency[w].push((id, u));
    }
    for list in &mut adjacency {
        list.sort_unstable();
    }

    let mut in_tree = vec![false; fp.one_cells.len()];
    let mut visited = vec![false; fp.zero_cells.len()];
    visited[fp.base] = true;
    match strategy {
        TreeStrategy::BreadthFirst => {
            let mut queue = std::collections::VecDeque::from([fp.base]);
            while let Some(u) = queue.pop_front() {
                for &(edge, w) in &adjacency[u] {
                    if !visited[w] {
                        visited[w] = true;
                        in_tree[edge] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        TreeStrategy::DepthFirst => {
            let mut stack = vec![fp.base];
            while let Some(u) = stack.pop() {
                for &(edge, w) in adjacency[u].iter().rev() {
                    if !visited[w] {
                        visited[w] = true;
                        in_tree[edge] = true;
                        stack.push(w);
                    }
                }
            }
        }
    }
    debug_assert!(
        visited.iter().all(|&v| v),
        "skeleton of a connected graph is connected"
    );

    let mut generator_of = vec![usize::MAX; fp.one_cells.len()];
    let mut generators = 0;
    for (id, tree) in in_tree.iter().enumerate() {
        if !tree {
            generator_of[id] = generators;
            generators += 1;
        }
    }

    let relators = fp
        .two_cells
        .iter()
        .map(|cell| {
            cell.steps
                .iter()
                .filter(|step| !in_tree[step.one_cell])
                .map(|step| {
                    (
                        generator_of[step.one_cell],
                        if step.forward { 1i8 } else { -1 },
                    )
                })
                .collect()
        })
        .collect();
    Presentation {
        generators,
        relators,
    }
}

/// First homology of the encoded 3-manifold, in canonical form.
pub fn h1(g: &ColoredGraph) -> Result<AbelianGroup, HomologyError> {
    h1_with(g, TreeStrategy::BreadthFirst)
}

pub fn h1_with(g: &ColoredGraph, strategy: TreeStrategy) -> Result<AbelianGroup, HomologyError> {
    if !g.is_gem()? {
        return Err(HomologyError::NotGem);
    }
    let fp = face_poset(g)?;
    let pres = pi1_presentation(&fp, strategy);
    Ok(abelianize(&pres))
}

/// Quotient of `Z^generators` by the relator lattice.
pub fn abelianize(pres: &Presentation) -> AbelianGroup {
    let mut matrix: Vec<Vec<HomologyInt>> = Vec::new();
    for relator in &pres.relators {
        if relator.is_empty() {
            continue;
        }
        let mut row = vec![HomologyInt::zero(); pres.generators];
        for &(generator, sign) in relator {
            row[generator] += HomologyInt::from(sign);
        }
        matrix.push(row);
    }
    if pres.generators == 0 {
        return AbelianGroup::trivial();
    }
    let snf = smith_normal_form(matrix);
    let rank = pres.generators - snf.rank();
    let torsion = snf
        .diagonal
        .iter()
        .filter(|d| !d.is_one())
        .map(|d| d.to_u64().expect("torsion coefficient fits in u64"))
        .collect();
    AbelianGroup { rank, torsion }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lins_mandel::{build, LmParams};

    fn graph(n: u32, p: u32, q: i64, m: i64) -> ColoredGraph {
        build(&LmParams::new(n, p, q, m).unwrap())
    }

    fn two_vertex_graph() -> ColoredGraph {
        let swap = vec![1u32, 0u32];
        ColoredGraph::new([swap.clone(), swap.clone(), swap.clone(), swap]).unwrap()
    }

    #[test]
    fn poset_counts() {
        let g = graph(3, 4, 1, 1);
        let fp = face_poset(&g).unwrap();
        assert_eq!(fp.three_cell_count, 24);
        assert_eq!(fp.two_cells.len(), 2 * 24);
        let census_total: usize = g.census().lengths.iter().map(Vec::len).sum();
        assert_eq!(fp.one_cells.len(), census_total);
    }

    #[test]
    fn poset_incidence_invariants() {
        let g = graph(3, 4, 1, 1);
        let fp = face_poset(&g).unwrap();
        for cell in &fp.one_cells {
            let [u, w] = cell.ends;
            assert_ne!(
                fp.zero_cells[u].triple, fp.zero_cells[w].triple,
                "the two 0-cells of a 1-cell extend the pair by different colours"
            );
        }
        for cell in &fp.two_cells {
            let mut edges: Vec<usize> = cell.steps.iter().map(|s| s.one_cell).collect();
            edges.sort_unstable();
            edges.dedup();
            assert_eq!(edges.len(), 3, "a triangle has three distinct sides");
        }
    }

    #[test]
    fn sphere_baseline() {
        assert_eq!(h1(&two_vertex_graph()).unwrap(), AbelianGroup::trivial());
    }

    #[test]
    fn generator_count_is_euler_count() {
        let g = graph(5, 3, 2, 1);
        let fp = face_poset(&g).unwrap();
        let pres = pi1_presentation(&fp, TreeStrategy::BreadthFirst);
        assert_eq!(
            pres.generators,
            fp.one_cells.len() - fp.zero_cells.len() + 1
        );
        assert!(pres.relators.iter().all(|r| r.len() <= 3));
    }

    #[test]
    fn counterexample_pair_homology() {
        assert_eq!(
            h1(&graph(3, 4, 1, 1)).unwrap(),
            AbelianGroup {
                rank: 0,
                torsion: vec![2, 6]
            }
        );
        assert_eq!(h1(&graph(3, 4, 5, 1)).unwrap(), AbelianGroup::cyclic(3));
        assert_eq!(h1(&graph(3, 4, 1, 2)).unwrap(), AbelianGroup::cyclic(3));
    }

    #[test]
    fn homology_sphere_and_lens_spaces() {
        assert!(h1(&graph(5, 3, 2, 1)).unwrap().is_trivial());
        assert_eq!(h1(&graph(2, 5, 1, 1)).unwrap(), AbelianGroup::cyclic(5));
        assert_eq!(h1(&graph(2, 3, 1, 1)).unwrap(), AbelianGroup::cyclic(3));
    }

    #[test]
    fn classical_manifolds_have_their_known_homology() {
        // Seifert-Weber dodecahedral space
        assert_eq!(
            h1(&graph(5, 8, 3, 2)).unwrap(),
            AbelianGroup {
                rank: 0,
                torsion: vec![5, 5, 5]
            }
        );
        // Fomenko-Matveev-Weeks manifold
        assert_eq!(
            h1(&graph(3, 7, 4, 1)).unwrap(),
            AbelianGroup {
                rank: 0,
                torsion: vec![5, 5]
            }
        );
        // Hantzsche-Wendt flat manifold
        assert_eq!(
            h1(&graph(3, 5, 2, 1)).unwrap(),
            AbelianGroup {
                rank: 0,
                torsion: vec![4, 4]
            }
        );
        // the other encoding of the Poincare homology sphere
        assert!(h1(&graph(3, 5, 4, 1)).unwrap().is_trivial());
    }

    #[test]
    fn tree_choice_does_not_matter() {
        for (n, p, q, m) in [(3, 4, 1, 1), (5, 3, 2, 1), (2, 5, 1, 1), (4, 4, 1, 1)] {
            let g = graph(n, p, q, m);
            assert_eq!(
                h1_with(&g, TreeStrategy::BreadthFirst).unwrap(),
                h1_with(&g, TreeStrategy::DepthFirst).unwrap(),
            );
        }
    }

    #[test]
    fn non_gem_input_is_rejected() {
        assert_eq!(h1(&graph(4, 3, 1, 2)).unwrap_err(), HomologyError::NotGem);
    }

    #[test]
    fn group_display() {
        assert_eq!(AbelianGroup::trivial().to_string(), "0");
        assert_eq!(
            AbelianGroup {
                rank: 0,
                torsion: vec![2, 6]
            }
            .to_string(),
            "Z_2 + Z_6"
        );
        assert_eq!(
            AbelianGroup {
                rank: 2,
                torsion: vec![4]
            }
            .to_string(),
            "Z^2 + Z_4"
        );
    }
}
