//! The lattice of subalgebras of a restricted Lie algebra: node enumeration
//! in a canonical order, cover relation, meet/join, order-theoretic
//! predicates with first-violation witnesses, and DOT export.

mod bits;

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use serde::Serialize;

use crate::algebra::RestrictedLieAlgebra;
use crate::error::Error;
use crate::field::Scalar;
use crate::linalg::{enumerate_subspaces, Subspace};
use bits::{and_first_one, and_last_one, and_popcount, ones, BitMatrix};

/// Which closure notion defines the node set and the join.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeMode {
    /// Subalgebras closed under the p-operation; join adjoins p-powers.
    Restricted,
    /// Plain Lie subalgebras; join is bracket closure only.
    Ordinary,
}

/// Verdict of a lattice predicate, with the first violation when it fails.
#[derive(Clone, Debug, Serialize)]
pub struct PredicateReport {
    pub predicate: String,
    pub holds: bool,
    pub witness: Option<WitnessData>,
}

/// Nodes pinning down a violation: canonical indices plus rendered spans.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessData {
    pub nodes: Vec<usize>,
    pub labels: Vec<String>,
    pub note: String,
}

/// Whether every closed interval is graded, and the common length of maximal
/// chains from bottom to top when it is.
#[derive(Clone, Debug, Serialize)]
pub struct JAlgebraReport {
    pub is_j: bool,
    pub d: Option<usize>,
    pub witness: Option<WitnessData>,
}

/// Per-node summary used by reports.
#[derive(Clone, Debug, Serialize)]
pub struct NodeInfo {
    pub index: usize,
    pub dim: usize,
    pub label: String,
    pub ideal: bool,
    pub restricted_ideal: bool,
    pub maximal: bool,
    pub atom: bool,
}

/// Meet/join index tables refuse to allocate past this many ordered pairs,
/// independent of the budget; beyond it the memory cost alone is prohibitive.
const TABLE_PAIR_CAP: u64 = 9_000_000;

struct Tables {
    meet: Vec<u32>,
    join: Vec<u32>,
}

pub struct SubalgebraLattice {
    alg: RestrictedLieAlgebra,
    mode: LatticeMode,
    budget: u64,
    nodes: Vec<Subspace>,
    index: HashMap<Vec<Scalar>, u32>,
    ideal: Vec<bool>,
    restricted_ideal: Vec<bool>,
    /// up.row(a) has bit b set iff node a <= node b (reflexive).
    up: BitMatrix,
    /// Transpose of `up`.
    down: BitMatrix,
    /// cov.row(a) has bit b set iff b covers a.
    cov: BitMatrix,
    covers_up: Vec<Vec<u32>>,
    covers_dn: Vec<Vec<u32>>,
    cover_edges: u64,
    maximal: Vec<bool>,
    atom: Vec<bool>,
    tables: OnceLock<Result<Tables, Error>>,
}

impl SubalgebraLattice {
    /// Enumerates all subalgebras of the given kind, in canonical order
    /// (dimension, then lexicographic reduced-basis entries), and computes
    /// containment and cover data. The budget bounds both the subspace
    /// stream and the quadratic containment work.
    pub fn enumerate(
        alg: &RestrictedLieAlgebra,
        mode: LatticeMode,
        budget: u64,
    ) -> Result<Self, Error> {
        let n = alg.dim();
        let all = enumerate_subspaces(alg.field(), n, None, budget)?;
        let mut nodes = Vec::new();
        let mut ideal = Vec::new();
        let mut restricted_ideal = Vec::new();
        for s in all {
            let fl = alg.classify_subspace(&s)?;
            let keep = match mode {
                LatticeMode::Restricted => fl.restricted_subalgebra,
                LatticeMode::Ordinary => fl.subalgebra,
            };
            if keep {
                ideal.push(fl.ideal);
                restricted_ideal.push(fl.restricted_ideal);
                nodes.push(s);
            }
        }
        let nn = nodes.len();
        let pairs = (nn as u128) * (nn as u128);
        if pairs > budget as u128 {
            return Err(Error::ResourceLimit {
                needed: pairs.min(u64::MAX as u128) as u64,
                budget,
            });
        }

        let mut index = HashMap::with_capacity(nn);
        for (i, s) in nodes.iter().enumerate() {
            index.insert(s.canonical_key(), i as u32);
        }

        let mut up = BitMatrix::new(nn);
        let mut down = BitMatrix::new(nn);
        for a in 0..nn {
            up.set(a, a);
            down.set(a, a);
        }
        for a in 0..nn {
            for b in a + 1..nn {
                if nodes[b].dim() > nodes[a].dim() && nodes[b].contains(&nodes[a]) {
                    up.set(a, b);
                    down.set(b, a);
                }
            }
        }

        // b covers a exactly when the closed interval [a, b] has two nodes.
        let mut cov = BitMatrix::new(nn);
        let mut covers_up = vec![Vec::new(); nn];
        let mut covers_dn = vec![Vec::new(); nn];
        let mut cover_edges = 0u64;
        for a in 0..nn {
            for b in ones(up.row(a)) {
                if b != a && and_popcount(up.row(a), down.row(b)) == 2 {
                    cov.set(a, b);
                    covers_up[a].push(b as u32);
                    covers_dn[b].push(a as u32);
                    cover_edges += 1;
                }
            }
        }

        let top = nn - 1;
        let maximal: Vec<bool> = (0..nn).map(|a| cov.get(a, top)).collect();
        let atom: Vec<bool> = (0..nn).map(|a| cov.get(0, a)).collect();

        Ok(SubalgebraLattice {
            alg: alg.clone(),
            mode,
            budget,
            nodes,
            index,
            ideal,
            restricted_ideal,
            up,
            down,
            cov,
            covers_up,
            covers_dn,
            cover_edges,
            maximal,
            atom,
            tables: OnceLock::new(),
        })
    }

    pub fn algebra(&self) -> &RestrictedLieAlgebra {
        &self.alg
    }

    pub fn mode(&self) -> LatticeMode {
        self.mode
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, i: usize) -> &Subspace {
        &self.nodes[i]
    }

    pub fn nodes(&self) -> &[Subspace] {
        &self.nodes
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn index_of(&self, s: &Subspace) -> Option<usize> {
        self.index.get(&s.canonical_key()).map(|&i| i as usize)
    }

    /// Is node a contained in node b?
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up.get(a, b)
    }

    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.cov.get(a, b)
    }

    pub fn covers_up(&self, a: usize) -> &[u32] {
        &self.covers_up[a]
    }

    pub fn covers_down(&self, a: usize) -> &[u32] {
        &self.covers_dn[a]
    }

    pub fn is_ideal(&self, i: usize) -> bool {
        self.ideal[i]
    }

    pub fn is_restricted_ideal(&self, i: usize) -> bool {
        self.restricted_ideal[i]
    }

    pub fn is_maximal(&self, i: usize) -> bool {
        self.maximal[i]
    }

    pub fn is_atom(&self, i: usize) -> bool {
        self.atom[i]
    }

    pub fn maximal_nodes(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| self.maximal[i]).collect()
    }

    pub fn atom_nodes(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| self.atom[i]).collect()
    }

    pub fn node_label(&self, i: usize) -> String {
        let s = &self.nodes[i];
        if s.dim() == 0 {
            return "0".to_string();
        }
        let parts: Vec<String> = s.basis_rows().map(|r| self.alg.render_vec(r)).collect();
        format!("span{{{}}}", parts.join(", "))
    }

    pub fn node_info(&self, i: usize) -> NodeInfo {
        NodeInfo {
            index: i,
            dim: self.nodes[i].dim(),
            label: self.node_label(i),
            ideal: self.ideal[i],
            restricted_ideal: self.restricted_ideal[i],
            maximal: self.maximal[i],
            atom: self.atom[i],
        }
    }

    /// Greatest lower bound. Every common lower bound is contained in the
    /// intersection node, so the one of highest canonical index is it.
    pub fn meet(&self, a: usize, b: usize) -> usize {
        and_last_one(self.down.row(a), self.down.row(b)).expect("lattice has a bottom node")
    }

    /// Least upper bound: the common upper bound of lowest canonical index.
    pub fn join(&self, a: usize, b: usize) -> usize {
        and_first_one(self.up.row(a), self.up.row(b)).expect("lattice has a top node")
    }

    fn check_budget(&self, needed: u128) -> Result<(), Error> {
        if needed > self.budget as u128 {
            return Err(Error::ResourceLimit {
                needed: needed.min(u64::MAX as u128) as u64,
                budget: self.budget,
            });
        }
        Ok(())
    }

    fn tables(&self) -> Result<&Tables, Error> {
        self.tables
            .get_or_init(|| {
                let nn = self.nodes.len();
                let pairs = (nn as u64) * (nn as u64);
                let cap = self.budget.min(TABLE_PAIR_CAP);
                if pairs > cap {
                    return Err(Error::ResourceLimit { needed: pairs, budget: cap });
                }
                let mut meet = vec![0u32; nn * nn];
                let mut join = vec![0u32; nn * nn];
                for a in 0..nn {
                    for b in a..nn {
                        let m = self.meet(a, b) as u32;
                        let j = self.join(a, b) as u32;
                        meet[a * nn + b] = m;
                        meet[b * nn + a] = m;
                        join[a * nn + b] = j;
                        join[b * nn + a] = j;
                    }
                }
                Ok(Tables { meet, join })
            })
            .as_ref()
            .map_err(|e| e.clone())
    }

    fn pass(&self, predicate: &str) -> PredicateReport {
        PredicateReport { predicate: predicate.to_string(), holds: true, witness: None }
    }

    fn fail(&self, predicate: &str, nodes: Vec<usize>, note: &str) -> PredicateReport {
        let labels = nodes.iter().map(|&i| self.node_label(i)).collect();
        PredicateReport {
            predicate: predicate.to_string(),
            holds: false,
            witness: Some(WitnessData { nodes, labels, note: note.to_string() }),
        }
    }

    /// Dedekind law over all node triples with X <= Z:
    /// (X v Y) ^ Z = X v (Y ^ Z). Witness: first violating (X, Y, Z).
    pub fn is_modular(&self) -> Result<PredicateReport, Error> {
        let t = self.tables()?;
        let nn = self.nodes.len();
        let sup_total: u128 =
            (0..nn).map(|x| ones(self.up.row(x)).count() as u128).sum();
        self.check_budget(sup_total * nn as u128)?;
        for x in 0..nn {
            let sups: Vec<usize> = ones(self.up.row(x)).collect();
            for y in 0..nn {
                let jxy = t.join[x * nn + y] as usize;
                for &z in &sups {
                    let lhs = t.meet[jxy * nn + z];
                    let myz = t.meet[y * nn + z] as usize;
                    let rhs = t.join[x * nn + myz];
                    if lhs != rhs {
                        return Ok(self.fail(
                            "modular",
                            vec![x, y, z],
                            "meet of join(X,Y) with Z differs from join of X with meet(Y,Z)",
                        ));
                    }
                }
            }
        }
        Ok(self.pass("modular"))
    }

    /// Whenever S ^ T is maximal in T, S must be maximal in S v T.
    /// Scans the partner T outermost; the witness pair is (S, T).
    pub fn is_upper_semimodular(&self) -> Result<PredicateReport, Error> {
        let t = self.tables()?;
        let nn = self.nodes.len();
        self.check_budget((nn as u128) * (nn as u128))?;
        for tt in 0..nn {
            for s in 0..nn {
                let m = t.meet[s * nn + tt] as usize;
                if self.cov.get(m, tt) {
                    let j = t.join[s * nn + tt] as usize;
                    if !self.cov.get(s, j) {
                        return Ok(self.fail(
                            "upper_semimodular",
                            vec![s, tt],
                            "meet is maximal in the partner but the subject is not maximal in the join",
                        ));
                    }
                }
            }
        }
        Ok(self.pass("upper_semimodular"))
    }

    /// Whenever U is maximal in U v B, U ^ B must be maximal in B.
    /// Scans the partner B outermost; the witness pair is (U, B).
    pub fn is_lower_semimodular(&self) -> Result<PredicateReport, Error> {
        let t = self.tables()?;
        let nn = self.nodes.len();
        self.check_budget((nn as u128) * (nn as u128))?;
        for b in 0..nn {
            for u in 0..nn {
                let j = t.join[u * nn + b] as usize;
                if self.cov.get(u, j) {
                    let m = t.meet[u * nn + b] as usize;
                    if !self.cov.get(m, b) {
                        return Ok(self.fail(
                            "lower_semimodular",
                            vec![u, b],
                            "subject is maximal in the join but the meet is not maximal in the partner",
                        ));
                    }
                }
            }
        }
        Ok(self.pass("lower_semimodular"))
    }

    /// Every node except the top equals the meet of the maximal nodes
    /// containing it.
    pub fn is_dually_atomistic(&self) -> Result<PredicateReport, Error> {
        let nn = self.nodes.len();
        let top = self.top();
        let maximals = self.maximal_nodes();
        let words = self.down.row(0).len();
        for s in 0..nn {
            if s == top {
                continue;
            }
            let mut acc: Vec<u64> = vec![u64::MAX; words];
            let mut any = false;
            for &m in &maximals {
                if self.up.get(s, m) {
                    bits::and_assign(&mut acc, self.down.row(m));
                    any = true;
                }
            }
            debug_assert!(any, "every proper node lies under some maximal node");
            let meet_node = bits::last_one(&acc).expect("meet of maximals exists");
            if meet_node != s {
                return Ok(self.fail(
                    "dually_atomistic",
                    vec![s, meet_node],
                    "node differs from the meet of the maximal nodes containing it",
                ));
            }
        }
        Ok(self.pass("dually_atomistic"))
    }

    /// Every node equals the join of the atoms below it.
    pub fn is_atomistic(&self) -> Result<PredicateReport, Error> {
        let nn = self.nodes.len();
        let atoms = self.atom_nodes();
        self.check_budget(nn as u128 * atoms.len().max(1) as u128)?;
        for s in 0..nn {
            let mut j = self.bottom();
            for &a in &atoms {
                if self.up.get(a, s) {
                    j = self.join(j, a);
                }
            }
            if j != s {
                return Ok(self.fail(
                    "atomistic",
                    vec![s, j],
                    "node differs from the join of the atoms below it",
                ));
            }
        }
        Ok(self.pass("atomistic"))
    }

    /// Graded-interval check: in every closed interval [U, V] all maximal
    /// chains have the same length. Interval covers coincide with global
    /// covers, so longest/shortest cover-path lengths from each source
    /// decide it. `d` is the common bottom-to-top chain length when graded.
    pub fn j_algebra(&self) -> Result<JAlgebraReport, Error> {
        let nn = self.nodes.len();
        self.check_budget(nn as u128 * self.cover_edges.max(1) as u128)?;
        const UNREACH: u32 = u32::MAX;
        let mut dmin = vec![UNREACH; nn];
        let mut dmax = vec![0u32; nn];
        let mut d_bottom_top = None;
        for u in 0..nn {
            for v in dmin.iter_mut().take(nn).skip(u) {
                *v = UNREACH;
            }
            dmin[u] = 0;
            dmax[u] = 0;
            for v in u + 1..nn {
                let mut mn = UNREACH;
                let mut mx = 0u32;
                for &w in &self.covers_dn[v] {
                    let w = w as usize;
                    if w >= u && dmin[w] != UNREACH {
                        mn = mn.min(dmin[w] + 1);
                        mx = mx.max(dmax[w] + 1);
                    }
                }
                dmin[v] = mn;
                if mn != UNREACH {
                    dmax[v] = mx;
                    if mn != mx {
                        return Ok(JAlgebraReport {
                            is_j: false,
                            d: None,
                            witness: Some(WitnessData {
                                nodes: vec![u, v],
                                labels: vec![self.node_label(u), self.node_label(v)],
                                note: "maximal chains in the interval have different lengths"
                                    .to_string(),
                            }),
                        });
                    }
                }
            }
            if u == 0 {
                d_bottom_top = Some(dmin[nn - 1] as usize);
            }
        }
        Ok(JAlgebraReport { is_j: true, d: d_bottom_top, witness: None })
    }

    /// Checks [S, H] <= S + H (vector-space sum) for every node pair.
    /// Nested pairs hold automatically since nodes are subalgebras. Scans
    /// the partner H outermost; the witness pair is (S, H).
    pub fn quasi_ideal_scan(&self) -> Result<PredicateReport, Error> {
        let nn = self.nodes.len();
        if self.alg.sparse_brackets().is_empty() {
            // Abelian: every bracket vanishes, nothing to scan.
            return Ok(self.pass("all_quasi_ideal"));
        }
        self.check_budget((nn as u128) * (nn as u128))?;
        for h in 0..nn {
            for s in 0..nn {
                if self.up.get(s, h) || self.up.get(h, s) {
                    continue;
                }
                let sum = self.nodes[s].sum(&self.nodes[h]);
                for rs in self.nodes[s].basis_rows() {
                    for rh in self.nodes[h].basis_rows() {
                        if !sum.contains_vec(&self.alg.bracket_vec(rs, rh)) {
                            return Ok(self.fail(
                                "all_quasi_ideal",
                                vec![s, h],
                                "bracket of the pair is not contained in the vector-space sum",
                            ));
                        }
                    }
                }
            }
        }
        Ok(self.pass("all_quasi_ideal"))
    }

    /// Hasse diagram in DOT format, bottom to top.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph subalgebra_lattice {\n  rankdir=BT;\n");
        for i in 0..self.nodes.len() {
            let mut marks = Vec::new();
            if self.ideal[i] {
                marks.push("I");
            }
            if self.restricted_ideal[i] {
                marks.push("RI");
            }
            if self.maximal[i] {
                marks.push("M");
            }
            if self.atom[i] {
                marks.push("A");
            }
            let suffix = if marks.is_empty() {
                String::new()
            } else {
                format!(" [{}]", marks.join(","))
            };
            out.push_str(&format!(
                "  n{} [label=\"{}: {}{}\"];\n",
                i,
                i,
                self.node_label(i),
                suffix
            ));
        }
        for a in 0..self.nodes.len() {
            for &b in &self.covers_up[a] {
                out.push_str(&format!("  n{} -> n{};\n", a, b));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Independent enumeration for cross-checks: every node is a join of
/// single-generator subalgebras, so closing those under pairwise join
/// reproduces the node set.
pub fn bottom_up_nodes(
    alg: &RestrictedLieAlgebra,
    mode: LatticeMode,
    budget: u64,
) -> Result<Vec<Subspace>, Error> {
    let count = alg.element_count();
    if count > budget as u128 {
        return Err(Error::ResourceLimit {
            needed: count.min(u64::MAX as u128) as u64,
            budget,
        });
    }
    let close = |gens: &[Vec<Scalar>]| match mode {
        LatticeMode::Restricted => alg.restricted_closure(gens),
        LatticeMode::Ordinary => alg.ordinary_closure(gens),
    };
    let mut seen: BTreeMap<Vec<Scalar>, Subspace> = BTreeMap::new();
    let zero = Subspace::zero(alg.field(), alg.dim());
    seen.insert(zero.canonical_key(), zero);
    for v in alg.coordinate_vectors() {
        if v.iter().all(|&c| c == 0) {
            continue;
        }
        let s = close(&[v]);
        seen.insert(s.canonical_key(), s);
    }
    loop {
        let current: Vec<Subspace> = seen.values().cloned().collect();
        let before = seen.len();
        for i in 0..current.len() {
            for j in i + 1..current.len() {
                let gens: Vec<Vec<Scalar>> = current[i]
                    .basis_rows()
                    .chain(current[j].basis_rows())
                    .map(|r| r.to_vec())
                    .collect();
                let s = close(&gens);
                seen.insert(s.canonical_key(), s);
            }
        }
        if seen.len() == before {
            break;
        }
    }
    let mut out: Vec<Subspace> = seen.into_values().collect();
    out.sort_by(|a, b| a.canonical_cmp(b));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::field::FiniteField;
    use crate::DEFAULT_BUDGET;

    fn lat(alg: &RestrictedLieAlgebra, mode: LatticeMode) -> SubalgebraLattice {
        SubalgebraLattice::enumerate(alg, mode, DEFAULT_BUDGET).unwrap()
    }

    fn line(f: &FiniteField, n: usize, v: &[i64]) -> Subspace {
        let row: Vec<Scalar> = v.iter().map(|&c| f.from_int(c)).collect();
        Subspace::from_vectors(f, n, &[row])
    }

    #[test]
    fn every_subspace_of_a_strongly_abelian_algebra_is_a_node() {
        let f = FiniteField::prime(2).unwrap();
        let a = families::strongly_abelian(&f, 2);
        let l = lat(&a, LatticeMode::Restricted);
        assert_eq!(l.node_count(), 5);
        assert_eq!(l.node(l.bottom()).dim(), 0);
        assert_eq!(l.node(l.top()).dim(), 2);
        assert_eq!(l.atom_nodes().len(), 3);
        assert_eq!(l.maximal_nodes().len(), 3);
    }

    #[test]
    fn node_sets_match_the_bottom_up_oracle() {
        let f2 = FiniteField::prime(2).unwrap();
        let f3 = FiniteField::prime(3).unwrap();
        let cases: Vec<(RestrictedLieAlgebra, LatticeMode)> = vec![
            (families::usmn(&f2), LatticeMode::Restricted),
            (families::usmn(&f2), LatticeMode::Ordinary),
            (families::heisenberg_null(&f3), LatticeMode::Restricted),
            (families::strongly_abelian(&f3, 2), LatticeMode::Restricted),
            (families::sl2(&f3).unwrap(), LatticeMode::Restricted),
        ];
        for (a, mode) in cases {
            let l = lat(&a, mode);
            let oracle = bottom_up_nodes(&a, mode, DEFAULT_BUDGET).unwrap();
            assert_eq!(l.nodes(), oracle.as_slice());
        }
    }

    #[test]
    fn restricted_nodes_of_the_four_dim_nilpotent_example() {
        let f = FiniteField::prime(2).unwrap();
        let a = families::usmn(&f);
        let l = lat(&a, LatticeMode::Restricted);
        // Hand count: 1 + 7 + 11 + 3 + 1 nodes.
        assert_eq!(l.node_count(), 23);
        // The line through x is not closed under the p-operation.
        assert!(l.index_of(&line(&f, 4, &[1, 0, 0, 0])).is_none());
        // Its closure span{x, xp} is.
        let xcl = a.restricted_closure(&[vec![1, 0, 0, 0]]);
        assert_eq!(xcl.dim(), 2);
        assert!(l.index_of(&xcl).is_some());
        assert_eq!(l.atom_nodes().len(), 7);
        assert_eq!(l.maximal_nodes().len(), 3);
        // Ordinary mode admits the bare line.
        let lo = lat(&a, LatticeMode::Ordinary);
        assert!(lo.index_of(&line(&f, 4, &[1, 0, 0, 0])).is_some());
        assert!(lo.node_count() > l.node_count());
    }

    #[test]
    fn all_lines_of_sl2_are_restricted_nodes() {
        let f3 = FiniteField::prime(3).unwrap();
        let l3 = lat(&families::sl2(&f3).unwrap(), LatticeMode::Restricted);
        assert_eq!(
            (0..l3.node_count()).filter(|&i| l3.node(i).dim() == 1).count(),
            13
        );
        let f5 = FiniteField::prime(5).unwrap();
        let l5 = lat(&families::sl2(&f5).unwrap(), LatticeMode::Restricted);
        assert_eq!(
            (0..l5.node_count()).filter(|&i| l5.node(i).dim() == 1).count(),
            31
        );
    }

    #[test]
    fn meet_and_join_are_the_lattice_bounds() {
        let f = FiniteField::prime(2).unwrap();
        let a = families::usmn(&f);
        let l = lat(&a, LatticeMode::Restricted);
        let nn = l.node_count();
        for x in 0..nn {
            for y in 0..nn {
                let m = l.meet(x, y);
                assert_eq!(*l.node(m), l.node(x).intersect(l.node(y)));
                let j = l.join(x, y);
                assert!(l.leq(x, j) && l.leq(y, j));
                let gens: Vec<Vec<Scalar>> = l
                    .node(x)
                    .basis_rows()
                    .chain(l.node(y).basis_rows())
                    .map(|r| r.to_vec())
                    .collect();
                assert_eq!(*l.node(j), a.restricted_closure(&gens));
                for c in 0..nn {
                    if l.leq(x, c) && l.leq(y, c) {
                        assert!(l.leq(j, c));
                    }
                }
            }
        }
    }

    #[test]
    fn covers_are_transitively_reduced() {
        let f = FiniteField::prime(3).unwrap();
        let a = families::heisenberg_null(&f);
        let l = lat(&a, LatticeMode::Restricted);
        assert_eq!(l.node_count(), 19);
        for x in 0..l.node_count() {
            for &y in l.covers_up(x) {
                let y = y as usize;
                assert!(l.leq(x, y) && x != y);
                for z in 0..l.node_count() {
                    assert!(!(z != x && z != y && l.leq(x, z) && l.leq(z, y)));
                }
            }
        }
    }

    #[test]
    fn semimodularity_fails_upward_at_the_cyclic_node() {
        for p in [2u64, 3] {
            let f = FiniteField::prime(p).unwrap();
            let a = families::usmn(&f);
            let l = lat(&a, LatticeMode::Restricted);
            let rep = l.is_upper_semimodular().unwrap();
            assert!(!rep.holds);
            let w = rep.witness.unwrap();
            let xcl = a.restricted_closure(&[vec![1, 0, 0, 0]]);
            let y_line = line(&f, 4, &[0, 0, 1, 0]);
            assert_eq!(
                w.nodes,
                vec![l.index_of(&xcl).unwrap(), l.index_of(&y_line).unwrap()]
            );
            // The failed lattice is not modular either.
            assert!(!l.is_modular().unwrap().holds);
        }
    }

    #[test]
    fn heisenberg_semimodularity_split() {
        let f = FiniteField::prime(3).unwrap();
        let a = families::heisenberg_null(&f);
        let l = lat(&a, LatticeMode::Restricted);
        assert!(l.is_lower_semimodular().unwrap().holds);
        let rep = l.is_upper_semimodular().unwrap();
        assert!(!rep.holds);
        let w = rep.witness.unwrap();
        let fx = line(&f, 3, &[1, 0, 0]);
        let fy = line(&f, 3, &[0, 1, 0]);
        assert_eq!(
            w.nodes,
            vec![l.index_of(&fx).unwrap(), l.index_of(&fy).unwrap()]
        );
    }

    #[test]
    fn quasi_ideal_scan_flags_the_heisenberg_pair() {
        let f = FiniteField::prime(3).unwrap();
        let a = families::heisenberg_null(&f);
        let l = lat(&a, LatticeMode::Restricted);
        let rep = l.quasi_ideal_scan().unwrap();
        assert!(!rep.holds);
        let w = rep.witness.unwrap();
        let fx = line(&f, 3, &[1, 0, 0]);
        let fy = line(&f, 3, &[0, 1, 0]);
        assert_eq!(
            w.nodes,
            vec![l.index_of(&fx).unwrap(), l.index_of(&fy).unwrap()]
        );
        assert_eq!(w.labels, vec!["span{x}".to_string(), "span{y}".to_string()]);
    }

    #[test]
    fn quasi_ideal_scan_passes_on_abelian_and_almost_abelian_inputs() {
        let f = FiniteField::prime(3).unwrap();
        let ab = families::strongly_abelian(&f, 2);
        assert!(lat(&ab, LatticeMode::Restricted).quasi_ideal_scan().unwrap().holds);
        let aa = families::almost_abelian(&f, 2).unwrap();
        assert!(lat(&aa, LatticeMode::Restricted).quasi_ideal_scan().unwrap().holds);
    }

    #[test]
    fn modularity_of_abelian_lattices_is_confirmed_by_full_scan() {
        let f = FiniteField::prime(3).unwrap();
        let a = families::strongly_abelian(&f, 2);
        let l = lat(&a, LatticeMode::Restricted);
        assert!(l.is_modular().unwrap().holds);
        assert!(l.is_upper_semimodular().unwrap().holds);
        assert!(l.is_lower_semimodular().unwrap().holds);
    }

    #[test]
    fn atomisticity_verdicts() {
        let f2 = FiniteField::prime(2).unwrap();
        let f3 = FiniteField::prime(3).unwrap();
        assert!(lat(&families::strongly_abelian(&f3, 2), LatticeMode::Restricted)
            .is_atomistic()
            .unwrap()
            .holds);
        assert!(lat(&families::torus(&f3, 2), LatticeMode::Restricted)
            .is_atomistic()
            .unwrap()
            .holds);
        let rep = lat(&families::usmn(&f2), LatticeMode::Restricted)
            .is_atomistic()
            .unwrap();
        assert!(!rep.holds);
    }

    #[test]
    fn dual_atomisticity_verdicts() {
        let f2 = FiniteField::prime(2).unwrap();
        let f3 = FiniteField::prime(3).unwrap();
        assert!(lat(&families::strongly_abelian(&f3, 2), LatticeMode::Restricted)
            .is_dually_atomistic()
            .unwrap()
            .holds);
        assert!(lat(&families::torus(&f3, 1), LatticeMode::Restricted)
            .is_dually_atomistic()
            .unwrap()
            .holds);
        // Intersecting the three maximal nodes leaves span{xp, z}, so even
        // the zero node fails to be such a meet.
        let rep = lat(&families::usmn(&f2), LatticeMode::Restricted)
            .is_dually_atomistic()
            .unwrap();
        assert!(!rep.holds);
        assert_eq!(rep.witness.unwrap().nodes[0], 0);
    }

    #[test]
    fn graded_interval_checks() {
        let f3 = FiniteField::prime(3).unwrap();
        let t1 = lat(&families::torus(&f3, 1), LatticeMode::Restricted);
        let rep = t1.j_algebra().unwrap();
        assert!(rep.is_j);
        assert_eq!(rep.d, Some(1));
        let ab = lat(&families::strongly_abelian(&f3, 3), LatticeMode::Restricted);
        let rep = ab.j_algebra().unwrap();
        assert!(rep.is_j);
        assert_eq!(rep.d, Some(3));
        // Non-split toral lines of sl2 over GF(5) are maximal, so chain
        // lengths differ and the lattice is not graded.
        let f5 = FiniteField::prime(5).unwrap();
        let l5 = lat(&families::sl2(&f5).unwrap(), LatticeMode::Restricted);
        let rep = l5.j_algebra().unwrap();
        assert!(!rep.is_j);
        assert!(rep.witness.is_some());
        assert!((0..l5.node_count()).any(|i| l5.node(i).dim() == 1 && l5.is_maximal(i)));
    }

    #[test]
    fn enumeration_respects_the_budget() {
        let f = FiniteField::prime(2).unwrap();
        let a = families::usmn(&f);
        match SubalgebraLattice::enumerate(&a, LatticeMode::Restricted, 10) {
            Err(Error::ResourceLimit { budget: 10, .. }) => {}
            other => panic!("expected a resource limit, got {:?}", other.map(|l| l.node_count())),
        }
    }

    #[test]
    fn dot_output_is_stable_and_well_formed() {
        let f = FiniteField::prime(2).unwrap();
        let a = families::strongly_abelian(&f, 2);
        let l = lat(&a, LatticeMode::Restricted);
        let dot = l.to_dot();
        assert!(dot.starts_with("digraph subalgebra_lattice {"));
        assert!(dot.contains("n0 [label=\"0: 0"));
        assert!(dot.contains("n0 -> n1;"));
        let again = lat(&a, LatticeMode::Restricted).to_dot();
        assert_eq!(dot, again);
    }
}
