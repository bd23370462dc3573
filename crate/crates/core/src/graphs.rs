//! The three modular graph families on Z_N, their adjacency structure,
//! special-edge classification and strong connectivity.
//!
//! Graphs are stored as sparse row lists (about 2N entries for the Collatz
//! and pn+q families, 3N for Conway) and densified only when the exact
//! linear-algebra oracle needs a matrix.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::exactla::BigMatrix;
use crate::permgraph::conway_permutations;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    Collatz,
    PnQ { p: u64, q: i64 },
    Conway,
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphKind::Collatz => write!(f, "collatz"),
            GraphKind::PnQ { p, q } => write!(f, "pnq({p},{q})"),
            GraphKind::Conway => write!(f, "conway"),
        }
    }
}

/// Directed multigraph on Z_N; doubles as a sparse adjacency matrix with
/// entries in {1, 2}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularGraph {
    n: usize,
    kind: GraphKind,
    rows: Vec<Vec<(usize, u8)>>,
}

impl ModularGraph {
    fn from_targets(n: usize, kind: GraphKind, targets: impl Fn(usize) -> Vec<usize>) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut ts = targets(i);
                ts.sort_unstable();
                let mut row: Vec<(usize, u8)> = Vec::with_capacity(ts.len());
                for t in ts {
                    match row.last_mut() {
                        Some((c, m)) if *c == t => *m += 1,
                        _ => row.push((t, 1)),
                    }
                }
                row
            })
            .collect();
        Self { n, kind, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn rows(&self) -> &[Vec<(usize, u8)>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> u8 {
        self.rows[i]
            .iter()
            .find(|&&(c, _)| c == j)
            .map_or(0, |&(_, m)| m)
    }

    /// Row sum of row i, with multiplicities.
    pub fn out_degree(&self, i: usize) -> u64 {
        self.rows[i].iter().map(|&(_, m)| m as u64).sum()
    }

    /// Total of all entries; 2N for Collatz/pn+q, 3N for Conway.
    pub fn entry_sum(&self) -> u64 {
        (0..self.n).map(|i| self.out_degree(i)).sum()
    }

    /// Dense adjacency matrix.
    pub fn adjacency_matrix(&self) -> BigMatrix {
        let mut m = BigMatrix::zero(self.n);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, mult) in row {
                m.set(i, j, BigInt::from(mult));
            }
        }
        m
    }

    /// One line per edge: `i <TAB> j <TAB> multiplicity`, rows ascending.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, mult) in row {
                out.push_str(&format!("{i}\t{j}\t{mult}\n"));
            }
        }
        out
    }

    /// True iff the graph has a single strongly connected component
    /// (Tarjan, iterative).
    pub fn is_strongly_connected(&self) -> bool {
        self.n <= 1 || self.scc_count() == 1
    }

    fn scc_count(&self) -> usize {
        const UNSET: usize = usize::MAX;
        let n = self.n;
        let mut index = vec![UNSET; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack: Vec<usize> = Vec::new();
        let mut call: Vec<(usize, usize)> = Vec::new();
        let mut next = 0usize;
        let mut count = 0usize;
        for root in 0..n {
            if index[root] != UNSET {
                continue;
            }
            index[root] = next;
            low[root] = next;
            next += 1;
            stack.push(root);
            on_stack[root] = true;
            call.push((root, 0));
            loop {
                let Some(&(v, ei)) = call.last() else { break };
                if ei < self.rows[v].len() {
                    call.last_mut().unwrap().1 += 1;
                    let w = self.rows[v][ei].0;
                    if index[w] == UNSET {
                        index[w] = next;
                        low[w] = next;
                        next += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(u, _)) = call.last() {
                        low[u] = low[u].min(low[v]);
                    }
                    if low[v] == index[v] {
                        count += 1;
                        loop {
                            let w = stack.pop().unwrap();
                            on_stack[w] = false;
                            if w == v {
                                break;
                            }
                        }
                    }
                }
            }
        }
        count
    }

    #[cfg(test)]
    pub(crate) fn from_parts(n: usize, kind: GraphKind, rows: Vec<Vec<(usize, u8)>>) -> Self {
        Self { n, kind, rows }
    }
}

fn generalized_step(p: u64, q: i64, rep: u64, n: u64) -> usize {
    let t = if rep % 2 == 0 {
        (rep / 2) as i128
    } else {
        (p as i128 * rep as i128 + q as i128) / 2
    };
    t.rem_euclid(n as i128) as usize
}

/// Modular pn+q graph: edges i -> T_{p,q}(rep) mod N over the 2N
/// representatives rep in [0, 2N); every row sums to 2.
pub fn build_pnq(p: u64, q: i64, n: u64) -> ModularGraph {
    assert!(n >= 2, "modulus must be at least 2");
    assert!(p >= 3 && p % 2 == 1 && q % 2 != 0, "p >= 3 and q must be odd");
    ModularGraph::from_targets(n as usize, GraphKind::PnQ { p, q }, |i| {
        vec![
            generalized_step(p, q, i as u64, n),
            generalized_step(p, q, i as u64 + n, n),
        ]
    })
}

/// Modular Collatz graph, the p = 3, q = 1 case.
pub fn build_collatz(n: u64) -> ModularGraph {
    let mut g = build_pnq(3, 1, n);
    g.kind = GraphKind::Collatz;
    g
}

/// Modular Conway amusical graph for odd N: one edge per rule
/// (star, plus, minus) per vertex; rows sum to 3.
///
/// Even N is not constructed: the determinant short-circuits to zero
/// without a matrix, and the adjacency entries would be convention, not
/// consequence.
pub fn build_conway(n: u64) -> Result<ModularGraph> {
    if n % 2 == 0 {
        return Err(Error::EvenModulus);
    }
    let maps = conway_permutations(n)?;
    let g = ModularGraph::from_targets(n as usize, GraphKind::Conway, |i| {
        vec![maps.star.image[i], maps.plus.image[i], maps.minus.image[i]]
    });
    debug_assert!(g.rows.iter().all(|row| row.iter().all(|&(_, m)| m <= 2)));
    Ok(g)
}

/// Loops, strongly/weakly double and triple edges of a Collatz graph.
/// Pairs are stored with the smaller vertex first where the orientation
/// does not matter.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct EdgeReport {
    pub loops: BTreeSet<usize>,
    pub strongly_double: BTreeSet<(usize, usize)>,
    pub weakly_double: BTreeSet<(usize, usize)>,
    pub triple: BTreeSet<(usize, usize)>,
}

/// Scanned and closed-form special-edge reports for a Collatz graph; the
/// two must agree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialEdges {
    pub observed: EdgeReport,
    pub predicted: EdgeReport,
}

impl SpecialEdges {
    pub fn agrees(&self) -> bool {
        self.observed == self.predicted
    }
}

fn observed_edges(g: &ModularGraph) -> EdgeReport {
    let mut report = EdgeReport::default();
    for (i, row) in g.rows.iter().enumerate() {
        for &(j, mult) in row {
            if i == j && mult >= 1 {
                report.loops.insert(i);
            }
            if mult == 2 {
                report.strongly_double.insert((i, j));
            }
            if i < j {
                let back = g.entry(j, i);
                if mult >= 1 && back >= 1 {
                    report.weakly_double.insert((i, j));
                }
                if mult + back >= 3 {
                    report.triple.insert((i, j));
                }
            }
        }
    }
    report
}

fn predicted_edges(n: u64) -> EdgeReport {
    let nu = n as usize;
    let mut report = EdgeReport::default();
    report.loops.insert(0);
    report.loops.insert(nu - 1);
    if n % 4 == 1 && n > 1 {
        report
            .strongly_double
            .insert(((n as usize - 1) / 2, (n as usize - 1) / 4));
    } else if n % 4 == 3 {
        report
            .strongly_double
            .insert(((n as usize - 1) / 2, (3 * n as usize - 1) / 4));
    }
    let unordered = |a: usize, b: usize| (a.min(b), a.max(b));
    report.weakly_double.insert(unordered(1 % nu, 2 % nu));
    if n % 3 == 0 {
        report.weakly_double.insert(unordered(nu / 3, 2 * nu / 3));
    }
    if n % 5 == 0 {
        report.weakly_double.insert(unordered(nu / 5 - 1, 4 * nu / 5 - 1));
        report
            .weakly_double
            .insert(unordered(2 * nu / 5 - 1, 3 * nu / 5 - 1));
    }
    if n == 3 || n == 5 {
        report.triple.insert((1, 2));
    }
    report
}

/// Special edges of the Collatz graph mod N: the scanned report next to
/// the closed-form prediction.
pub fn special_edges(n: u64) -> SpecialEdges {
    SpecialEdges {
        observed: observed_edges(&build_collatz(n)),
        predicted: predicted_edges(n),
    }
}

/// Multiplicity-weighted out-/in-degree multisets, as degree -> count maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub out_degrees: std::collections::BTreeMap<u64, usize>,
    pub in_degrees: std::collections::BTreeMap<u64, usize>,
}

pub fn degree_profile(g: &ModularGraph) -> DegreeProfile {
    let mut out_degrees = std::collections::BTreeMap::new();
    let mut in_weighted = vec![0u64; g.n];
    for (i, row) in g.rows.iter().enumerate() {
        *out_degrees.entry(g.out_degree(i)).or_insert(0) += 1;
        for &(j, mult) in row {
            in_weighted[j] += mult as u64;
        }
    }
    let mut in_degrees = std::collections::BTreeMap::new();
    for d in in_weighted {
        *in_degrees.entry(d).or_insert(0) += 1;
    }
    DegreeProfile { out_degrees, in_degrees }
}

/// Weighted in-degree of each vertex.
pub fn in_degrees(g: &ModularGraph) -> Vec<u64> {
    let mut in_weighted = vec![0u64; g.n];
    for row in &g.rows {
        for &(j, mult) in row {
            in_weighted[j] += mult as u64;
        }
    }
    in_weighted
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collatz_mod_3() {
        let g = build_collatz(3);
        assert_eq!(g.rows(), &[
            vec![(0, 1), (2, 1)],
            vec![(2, 2)],
            vec![(1, 1), (2, 1)],
        ]);
        // (2,2) is an edge because T(5) = 8 = 2 (mod 3)
        assert_eq!(g.entry(2, 2), 1);
        assert_eq!(g.entry_sum(), 6);
        let m = g.adjacency_matrix();
        assert_eq!(m.get(1, 2), &BigInt::from(2));
        assert_eq!(m.trace(), BigInt::from(2));
    }

    #[test]
    fn entry_sums_and_trace() {
        for n in 2..=60 {
            let g = build_collatz(n);
            assert_eq!(g.entry_sum(), 2 * n);
            assert_eq!(g.adjacency_matrix().trace(), BigInt::from(2));
            assert!((0..g.n()).all(|i| g.out_degree(i) == 2));
        }
    }

    #[test]
    fn pnq_specialization_and_isomorphy() {
        for n in [5u64, 7, 9, 12, 25] {
            let a = build_pnq(3, 1, n);
            let b = build_collatz(n);
            assert_eq!(a.rows(), b.rows());
        }
        // 3n-1 graphs are isomorphic to Collatz graphs under i -> -i
        let g = build_pnq(3, -1, 7);
        let c = build_collatz(7);
        for i in 0..7usize {
            for j in 0..7usize {
                assert_eq!(g.entry(i, j), c.entry((7 - i) % 7, (7 - j) % 7));
            }
        }
        let g = build_pnq(5, 1, 11);
        assert!((0..11).all(|i| g.out_degree(i) == 2));
    }

    #[test]
    fn conway_mod_7_matches_reference_matrix() {
        let g = build_conway(7).unwrap();
        let expect: [[u8; 7]; 7] = [
            [1, 0, 1, 0, 0, 1, 0],
            [0, 1, 0, 0, 1, 1, 0],
            [1, 0, 0, 2, 0, 0, 0],
            [0, 1, 1, 0, 0, 0, 1],
            [0, 1, 0, 0, 0, 1, 1],
            [1, 0, 0, 0, 2, 0, 0],
            [0, 0, 1, 1, 0, 0, 1],
        ];
        for i in 0..7 {
            for j in 0..7 {
                assert_eq!(g.entry(i, j), expect[i][j], "entry ({i},{j})");
            }
            assert_eq!(g.out_degree(i), 3);
        }
        assert_eq!(g.entry_sum(), 21);
        assert_eq!(build_conway(4).err(), Some(Error::EvenModulus));
    }

    #[test]
    fn conway_mod_9_thirds_equal() {
        let g = build_conway(9).unwrap();
        for i in 0..3 {
            assert_eq!(g.rows()[i], g.rows()[i + 3]);
            assert_eq!(g.rows()[i], g.rows()[i + 6]);
        }
    }

    #[test]
    fn special_edges_examples() {
        let se = special_edges(7);
        assert!(se.agrees());
        assert_eq!(se.observed.loops, BTreeSet::from([0, 6]));
        assert_eq!(se.observed.strongly_double, BTreeSet::from([(3, 5)]));
        assert_eq!(se.observed.weakly_double, BTreeSet::from([(1, 2)]));
        assert!(se.observed.triple.is_empty());

        let se = special_edges(15);
        assert!(se.agrees());
        assert_eq!(
            se.observed.weakly_double,
            BTreeSet::from([(1, 2), (5, 10), (2, 11), (5, 8)])
        );

        let se = special_edges(3);
        assert!(se.agrees());
        assert_eq!(se.observed.triple, BTreeSet::from([(1, 2)]));
        let se = special_edges(5);
        assert!(se.agrees());
        assert_eq!(se.observed.triple, BTreeSet::from([(1, 2)]));
    }

    #[test]
    fn special_edges_agree_small_range() {
        for n in 2..=80 {
            assert!(special_edges(n).agrees(), "edge report mismatch at N={n}");
        }
    }

    #[test]
    fn degree_profiles() {
        let g = build_collatz(7);
        let p = degree_profile(&g);
        assert_eq!(p.out_degrees, std::collections::BTreeMap::from([(2, 7)]));
        assert_eq!(p.in_degrees, std::collections::BTreeMap::from([(2, 7)]));

        let g = build_collatz(9);
        for (v, d) in in_degrees(&g).iter().enumerate() {
            let expect = if v % 3 == 2 { 4 } else { 1 };
            assert_eq!(*d, expect, "in-degree of {v} mod 9");
        }

        let g = build_conway(7).unwrap();
        let p = degree_profile(&g);
        assert_eq!(p.out_degrees, std::collections::BTreeMap::from([(3, 7)]));
    }

    #[test]
    fn strong_connectivity_samples() {
        for n in 2..=60 {
            assert!(build_collatz(n).is_strongly_connected(), "collatz N={n}");
        }
        for n in (3..=59u64).step_by(2) {
            assert!(
                build_conway(n).unwrap().is_strongly_connected(),
                "conway N={n}"
            );
        }
        let lonely = ModularGraph::from_parts(1, GraphKind::Collatz, vec![vec![(0, 1)]]);
        assert!(lonely.is_strongly_connected());
        let split = ModularGraph::from_parts(
            2,
            GraphKind::Collatz,
            vec![vec![(0, 1)], vec![(0, 1), (1, 1)]],
        );
        assert!(!split.is_strongly_connected());
    }

    #[test]
    fn band_structure() {
        for n in [5u64, 7, 9, 15, 71] {
            let g = build_collatz(n);
            let nu = n as usize;
            let mut band = vec![vec![false; nu]; nu];
            for k in 0..nu {
                band[2 * k % nu][k] = true;
                band[(2 * k + 1) % nu][(3 * k + 2) % nu] = true;
            }
            for i in 0..nu {
                for j in 0..nu {
                    assert_eq!(g.entry(i, j) > 0, band[i][j], "band at ({i},{j}), N={n}");
                }
            }
        }
    }

    #[test]
    fn even_modulus_column_halves() {
        for n in [4u64, 6, 10, 16, 22] {
            let g = build_collatz(n);
            let half = (n / 2) as usize;
            for i in 0..g.n() {
                for j in 0..half {
                    assert_eq!(g.entry(i, j), g.entry(i, j + half));
                }
            }
        }
    }

    #[test]
    fn conway_rotation_symmetry() {
        for n in (3..=39u64).step_by(2) {
            let g = build_conway(n).unwrap();
            let nu = n as usize;
            for i in 1..nu {
                for j in 1..nu {
                    assert_eq!(g.entry(i, j), g.entry(nu - i, nu - j), "N={n} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn dump_format() {
        let g = build_collatz(3);
        assert_eq!(g.dump(), "0\t0\t1\n0\t2\t1\n1\t2\t2\n2\t1\t1\n2\t2\t1\n");
    }
}
