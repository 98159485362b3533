//! Exhaustive cross-validation over a parameter range.
//!
//! For every tuple the survey compares the parametric gem criterion with
//! the sphere-residue oracle, the predicted census with the actual one,
//! and the twin re-parameterization with table equality; for every
//! in-scope pair inside an `(n,p)` cell it compares the arithmetic
//! classifier with brute-force isomorphism search and checks that
//! isomorphism, homeomorphism and homology stay consistent. Output is
//! deterministic: cells are processed independently (in parallel) and
//! reassembled in lexicographic order, and the JSON body carries no
//! timestamps.

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{classify_pair, q_square_is_p_plus_minus_one, IsoVerdict};
use crate::coverings::spaces_homeomorphic;
use crate::graph::ColoredGraph;
use crate::homology::{h1, AbelianGroup};
use crate::iso::{are_isomorphic, IsoWitness};
use crate::lins_mandel::{
    build, graphs_equal, is_gem_parametric, predicted_census, reduce, LmParams,
};

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SurveyRange {
    pub n_max: u32,
    pub p_max: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct TupleRecord {
    pub params: LmParams,
    pub gem_parametric: bool,
    pub gem_direct: bool,
    pub bipartite: bool,
    /// `None` when `gcd(p,q) != 1` (the prediction is not defined there).
    pub census_match: Option<bool>,
    /// Table equality of `G(n,p,q,m)` and `G(n,p,q+p,-m)`.
    pub twin_equal: bool,
    /// `None` for non-gems.
    pub h1: Option<AbelianGroup>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairRecord {
    pub a: LmParams,
    pub b: LmParams,
    pub brute_force: bool,
    pub witness: Option<IsoWitness>,
    pub verdict: IsoVerdict,
    pub agree: bool,
    /// Isomorphic pairs must have equal H1.
    pub h1_consistent: bool,
    /// `None` outside the homeomorphism criterion's domain
    /// (same `q`, `p` even, `q != ±1 mod p`, both `m` units).
    pub homeomorphic: Option<bool>,
    /// Isomorphism must imply homeomorphism, and homeomorphism equal H1.
    pub homeo_consistent: bool,
    /// Whether the superseded published criterion (`q' = ±q^{±1} mod p`,
    /// `m' = ±m^{±1}`) disagrees with the brute-force answer here.
    pub prior_criterion_mismatch: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Discrepancy {
    pub kind: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureFinding {
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SurveyReport {
    pub range: SurveyRange,
    pub tuples: Vec<TupleRecord>,
    pub pairs: Vec<PairRecord>,
    pub discrepancies: Vec<Discrepancy>,
    /// Evidence for the open conjecture on non-unit `m`: pairs inside a
    /// conjectured homeomorphism class whose homology differs. Findings,
    /// not failures.
    pub conjecture_findings: Vec<ConjectureFinding>,
}

impl SurveyReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn summary(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let gems = self.tuples.iter().filter(|t| t.gem_direct).count();
        let iso_pairs = self.pairs.iter().filter(|p| p.brute_force).count();
        let prior = self
            .pairs
            .iter()
            .filter(|p| p.prior_criterion_mismatch)
            .count();
        writeln!(
            out,
            "survey range: n <= {}, p <= {}",
            self.range.n_max, self.range.p_max
        )
        .unwrap();
        writeln!(out, "tuples: {} ({} gems)", self.tuples.len(), gems).unwrap();
        writeln!(
            out,
            "pairs: {} ({} isomorphic)",
            self.pairs.len(),
            iso_pairs
        )
        .unwrap();
        writeln!(out, "prior literature mismatches: {prior}").unwrap();
        writeln!(
            out,
            "conjecture findings: {}",
            self.conjecture_findings.len()
        )
        .unwrap();
        if self.discrepancies.is_empty() {
            writeln!(out, "discrepancies: none").unwrap();
        } else {
            writeln!(out, "discrepancies: {}", self.discrepancies.len()).unwrap();
            for d in &self.discrepancies {
                writeln!(out, "  [{}] {}", d.kind, d.detail).unwrap();
            }
        }
        out
    }
}

struct CellResult {
    tuples: Vec<TupleRecord>,
    pairs: Vec<PairRecord>,
    discrepancies: Vec<Discrepancy>,
    findings: Vec<ConjectureFinding>,
}

/// Runs the full cross-validation for `1 <= n <= n_max`, `1 <= p <= p_max`.
/// Pair records cover the classifier scope `n,p >= 3`.
pub fn run_survey(range: SurveyRange) -> SurveyReport {
    let cells: Vec<(u32, u32)> = (1..=range.n_max)
        .flat_map(|n| (1..=range.p_max).map(move |p| (n, p)))
        .collect();
    let results: Vec<CellResult> = cells.par_iter().map(|&(n, p)| survey_cell(n, p)).collect();

    let mut report = SurveyReport {
        range,
        tuples: Vec::new(),
        pairs: Vec::new(),
        discrepancies: Vec::new(),
        conjecture_findings: Vec::new(),
    };
    for cell in results {
        report.tuples.extend(cell.tuples);
        report.pairs.extend(cell.pairs);
        report.discrepancies.extend(cell.discrepancies);
        report.conjecture_findings.extend(cell.findings);
    }
    report
}

fn survey_cell(n: u32, p: u32) -> CellResult {
    let mut cell = CellResult {
        tuples: Vec::new(),
        pairs: Vec::new(),
        discrepancies: Vec::new(),
        findings: Vec::new(),
    };
    let mut in_scope: Vec<(LmParams, ColoredGraph, Option<AbelianGroup>)> = Vec::new();

    for q in 0..2 * p {
        for m in 0..n {
            let params = LmParams::new(n, p, q as i64, m as i64).expect("positive n,p");
            let graph = build(&params);
            let record = survey_tuple(&params, &graph, &mut cell.discrepancies);
            let classifier_scope = n >= 3
                && p >= 3
                && params.coprime_pq()
                && (p % 2 == 0 || m == params.q_parity_unit());
            if classifier_scope {
                in_scope.push((params, graph, record.h1.clone()));
            }
            cell.tuples.push(record);
        }
    }

    for i in 0..in_scope.len() {
        for j in i..in_scope.len() {
            let record = survey_pair(&in_scope[i], &in_scope[j], &mut cell.discrepancies);
            conjecture_evidence(&in_scope[i], &in_scope[j], &mut cell.findings);
            cell.pairs.push(record);
        }
    }

    check_equivalence_relation(&in_scope, &mut cell.discrepancies);
    cell
}

fn survey_tuple(
    params: &LmParams,
    graph: &ColoredGraph,
    discrepancies: &mut Vec<Discrepancy>,
) -> TupleRecord {
    let gem_parametric = is_gem_parametric(params);
    let gem_direct = graph.is_gem().expect("family graphs are connected");
    let bipartite = graph.is_bipartite();
    let census_match = params
        .coprime_pq()
        .then(|| predicted_census(params).expect("coprime checked") == graph.census());
    let twin_equal = graphs_equal(params, &params.twin());
    let h1 = gem_direct.then(|| h1(graph).expect("gem oracle just passed"));

    let mut push = |kind: &str, detail: String| {
        discrepancies.push(Discrepancy {
            kind: kind.to_string(),
            detail,
        });
    };
    if gem_parametric != gem_direct {
        push(
            "gem-criterion",
            format!("{params}: parametric={gem_parametric}, direct={gem_direct}"),
        );
    }
    if census_match == Some(false) {
        push(
            "census",
            format!("{params}: predicted census differs from actual"),
        );
    }
    if !twin_equal {
        push("twin-equality", format!("{params}: twin tables differ"));
    }
    if !bipartite {
        push("bipartiteness", format!("{params}: graph is not bipartite"));
    }
    TupleRecord {
        params: *params,
        gem_parametric,
        gem_direct,
        bipartite,
        census_match,
        twin_equal,
        h1,
    }
}

fn survey_pair(
    a: &(LmParams, ColoredGraph, Option<AbelianGroup>),
    b: &(LmParams, ColoredGraph, Option<AbelianGroup>),
    discrepancies: &mut Vec<Discrepancy>,
) -> PairRecord {
    let (pa, ga, ha) = a;
    let (pb, gb, hb) = b;
    let witness = are_isomorphic(ga, gb).expect("family graphs are connected");
    let brute_force = witness.is_some();
    let verdict = classify_pair(pa, pb).expect("pair is in classifier scope");
    let agree = verdict.isomorphic == Some(brute_force);

    let mut push = |kind: &str, detail: String| {
        discrepancies.push(Discrepancy {
            kind: kind.to_string(),
            detail,
        });
    };
    if !agree {
        push(
            "iso-classifier",
            format!(
                "{pa} vs {pb}: brute_force={brute_force}, classifier={:?} ({})",
                verdict.isomorphic, verdict.matched_condition
            ),
        );
    }
    let h1_consistent = !brute_force || ha == hb;
    if !h1_consistent {
        push(
            "h1-invariance",
            format!("{pa} vs {pb}: isomorphic but H1 differs"),
        );
    }

    let homeomorphic = homeomorphism_scope(pa, pb).then(|| {
        spaces_homeomorphic(pa.n, pa.p, pa.q, pa.m as i64, pb.m as i64).expect("in scope")
    });
    let mut homeo_consistent = true;
    if brute_force && homeomorphic == Some(false) {
        homeo_consistent = false;
        push(
            "homeomorphism-consistency",
            format!("{pa} vs {pb}: isomorphic graphs but criterion denies homeomorphism"),
        );
    }
    if homeomorphic == Some(true) && ha != hb {
        homeo_consistent = false;
        push(
            "homeomorphism-consistency",
            format!("{pa} vs {pb}: homeomorphic by criterion but H1 differs"),
        );
    }

    let prior = prior_criterion(pa, pb);
    let prior_criterion_mismatch = prior.map(|claim| claim != brute_force).unwrap_or(false);

    PairRecord {
        a: *pa,
        b: *pb,
        brute_force,
        witness,
        verdict,
        agree,
        h1_consistent,
        homeomorphic,
        homeo_consistent,
        prior_criterion_mismatch,
    }
}

fn homeomorphism_scope(a: &LmParams, b: &LmParams) -> bool {
    let q_mod_p = a.q % a.p;
    a.q == b.q
        && a.p % 2 == 0
        && q_mod_p != 1
        && q_mod_p != a.p - 1
        && a.n.gcd(&a.m) == 1
        && b.n.gcd(&b.m) == 1
}

/// The published criterion this survey refutes: for `gcd(n,m)=1`,
/// isomorphic iff `q' = ±q^{±1} mod p` and `m' = ±m^{±1}`. Returns `None`
/// where it does not claim to apply.
fn prior_criterion(a: &LmParams, b: &LmParams) -> Option<bool> {
    use crate::modular::mod_inverse;
    if a.n.gcd(&a.m) != 1 || b.n.gcd(&b.m) != 1 || (a.n, a.p) != (b.n, b.p) {
        return None;
    }
    let p = a.p as i64;
    let q = (a.q % a.p) as i64;
    let q_inv = mod_inverse(q, p)?;
    let qs = [q, -q, q_inv, -q_inv].map(|x| x.rem_euclid(p));
    let n = a.n as i64;
    let m = a.m as i64;
    let m_inv = mod_inverse(m, n).expect("unit");
    let ms = [m, -m, m_inv, -m_inv].map(|x| x.rem_euclid(n));
    Some(qs.contains(&((b.q % b.p) as i64)) && ms.contains(&(b.m as i64)))
}

/// Within a conjectured homeomorphism class for non-unit `m` (`m' = m`,
/// extended by `m' = -m` when `q^2 = p±1`), homology must not distinguish
/// the spaces; record evidence if it does.
fn conjecture_evidence(
    a: &(LmParams, ColoredGraph, Option<AbelianGroup>),
    b: &(LmParams, ColoredGraph, Option<AbelianGroup>),
    findings: &mut Vec<ConjectureFinding>,
) {
    let (pa, _, ha) = a;
    let (pb, _, hb) = b;
    if pa.p % 2 != 0 || pa.q != pb.q || (pa.n, pa.p) != (pb.n, pb.p) {
        return;
    }
    let q_mod_p = pa.q % pa.p;
    if q_mod_p == 1 || q_mod_p == pa.p - 1 {
        return;
    }
    if pa.n.gcd(&pa.m) == 1 || pb.n.gcd(&pb.m) == 1 {
        return;
    }
    let special = q_square_is_p_plus_minus_one(pa.p, pa.q);
    let conjectured = pb.m == pa.m || (special && pb.m == reduce(-(pa.m as i64), pa.n));
    if conjectured && ha != hb {
        findings.push(ConjectureFinding {
            detail: format!("{pa} vs {pb}: conjectured homeomorphic but H1 differs"),
        });
    }
}

/// The classifier must define an equivalence relation on the in-scope
/// tuples of a cell.
fn check_equivalence_relation(
    tuples: &[(LmParams, ColoredGraph, Option<AbelianGroup>)],
    discrepancies: &mut Vec<Discrepancy>,
) {
    let t = tuples.len();
    let mut iso = vec![vec![false; t]; t];
    for i in 0..t {
        for j in 0..t {
            iso[i][j] = classify_pair(&tuples[i].0, &tuples[j].0)
                .expect("in scope")
                .isomorphic
                .expect("decided");
        }
    }
    for i in 0..t {
        if !iso[i][i] {
            discrepancies.push(Discrepancy {
                kind: "classifier-reflexivity".into(),
                detail: format!("{}", tuples[i].0),
            });
        }
        for j in 0..t {
            if iso[i][j] != iso[j][i] {
                discrepancies.push(Discrepancy {
                    kind: "classifier-symmetry".into(),
                    detail: format!("{} vs {}", tuples[i].0, tuples[j].0),
                });
            }
            for k in 0..t {
                if iso[i][j] && iso[j][k] && !iso[i][k] {
                    discrepancies.push(Discrepancy {
                        kind: "classifier-transitivity".into(),
                        detail: format!(
                            "{} ~ {} ~ {} but not transitively",
                            tuples[i].0, tuples[j].0, tuples[k].0
                        ),
                    });
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_range_yields_empty_report() {
        let report = run_survey(SurveyRange { n_max: 0, p_max: 0 });
        assert!(report.tuples.is_empty());
        assert!(report.pairs.is_empty());
        assert!(report.discrepancies.is_empty());
    }

    #[test]
    fn small_survey_is_clean_and_deterministic() {
        let range = SurveyRange { n_max: 3, p_max: 4 };
        let report = run_survey(range);
        assert!(!report.tuples.is_empty());
        assert!(
            report.discrepancies.is_empty(),
            "{:#?}",
            report.discrepancies
        );
        let again = run_survey(range);
        assert_eq!(report.to_json(), again.to_json());
    }

    #[test]
    fn refutation_pair_is_flagged() {
        let report = run_survey(SurveyRange { n_max: 3, p_max: 4 });
        let a = LmParams::new(3, 4, 1, 1).unwrap();
        let b = LmParams::new(3, 4, 5, 1).unwrap();
        let pair = report
            .pairs
            .iter()
            .find(|r| (r.a, r.b) == (a, b) || (r.a, r.b) == (b, a))
            .expect("pair surveyed");
        assert!(!pair.brute_force);
        assert!(pair.agree);
        assert!(
            pair.prior_criterion_mismatch,
            "the superseded criterion called these isomorphic"
        );
    }
}
