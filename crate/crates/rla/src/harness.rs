//! Catalog of lattice-theoretic claims checked on concrete algebras.
//!
//! Claims proved for any or any perfect base field run in assert mode and
//! are build-breaking; claims proved only over algebraically closed fields
//! run in observe mode, where outcomes are recorded but failures are
//! expected to be possible (the counterexamples in the literature live over
//! non-closed fields).  The corpus runner sweeps the generator families and
//! exhaustive small structure-constant tables and merges everything into a
//! deterministic aggregate report.

use serde::{Deserialize, Serialize};

use crate::algebra::RestrictedLieAlgebra;
use crate::error::Error;
use crate::families::{self, AbelianPmap, SkewPolynomial};
use crate::field::{FiniteField, Scalar};
use crate::lattice::{JAlgebraReport, LatticeMode, PredicateReport, SubalgebraLattice};
use crate::linalg::{enumerate_subspaces, Mat, Subspace};
use crate::structure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Assert,
    Observe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldHypothesis {
    Any,
    Perfect,
    AlgClosed,
}

/// One catalog entry: the claim, its hypotheses, and how it is enforced.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TheoremRecord {
    pub id: &'static str,
    pub summary: &'static str,
    pub field: FieldHypothesis,
    /// Characteristic excluded by the hypotheses, if any.
    pub forbidden_char: Option<u64>,
    /// Structural standing hypothesis ("nilpotent"), if any.
    pub structural: Option<&'static str>,
    pub mode: Mode,
}

static CATALOG: [TheoremRecord; 15] = [
    TheoremRecord {
        id: "T1",
        summary: "if every restricted subalgebra is a quasi-ideal, the restricted lattice \
                  is modular, and in particular semimodular in both directions",
        field: FieldHypothesis::Any,
        forbidden_char: None,
        structural: None,
        mode: Mode::Assert,
    },
    TheoremRecord {
        id: "T2",
        summary: "the all-quasi-ideal property puts the derived algebra inside the \
                  subalgebra generated by p-th powers, and caps the nilpotency class at two",
        field: FieldHypothesis::Any,
        forbidden_char: None,
        structural: None,
        mode: Mode::Assert,
    },
    TheoremRecord {
        id: "T3",
        summary: "dual atomisticity forces an abelian nilradical, restricted-ideal \
                  intersections with maximal restricted subalgebras, and ideal closures \
                  of nilradical subspaces",
        field: FieldHypothesis::Any,
        forbidden_char: None,
        structural: None,
        mode: Mode::Assert,
    },
    TheoremRecord {
        id: "T4",
        summary: "lower semimodularity forces equal lengths for all maximal chains \
                  between comparable nodes",
        field: FieldHypothesis::Any,
        forbidden_char: None,
        structural: None,
        mode: Mode::Assert,
    },
    TheoremRecord {
        id: "T5",
        summary: "for nilpotent algebras away from characteristic two, the all-quasi-ideal \
                  property is equivalent to splitting as a toral ideal plus a p-nilpotent \
                  ideal that itself has the all-quasi-ideal property",
        field: FieldHypothesis::Perfect,
        forbidden_char: Some(2),
        structural: Some("nilpotent"),
        mode: Mode::Assert,
    },
    TheoremRecord {
        id: "T6",
        summary: "the subalgebra generated by p-th powers is a restricted quasi-ideal \
                  exactly when it is an ideal",
        field: FieldHypothesis::Perfect,
        forbidden_char: None,
        structural: None,
        mode: Mode::Assert,
    },
    TheoremRecord {
        id: "T7",
        summary: "the core of a restricted subalgebra is a restricted ideal",
        field: FieldHypothesis::Any,
        forbidden_char: None,
        structural: None,
        mode: Mode::Assert,
    },
    TheoremRecord {
        id: "T8",
        summary: "solvable dually atomistic algebras are abelian or split as a toral \
                  complement acting as a projection on an abelian codimension-one \
                  nilradical with cyclic central blocks",
        field: FieldHypothesis::Any,
        forbidden_char: None,
        structural: None,
        mode: Mode::Assert,
    },
    TheoremRecord {
        id: "T9",
        summary: "a perfect algebra whose ordinary lattice is dually atomistic has \
                  every subalgebra restricted",
        field: FieldHypothesis::Any,
        forbidden_char: None,
        structural: None,
        mode: Mode::Assert,
    },
    TheoremRecord {
        id: "T10",
        summary: "upper semimodularity, modularity, and the all-quasi-ideal property \
                  coincide, and force almost abelian or nilpotent of class at most two",
        field: FieldHypothesis::AlgClosed,
        forbidden_char: Some(2),
        structural: None,
        mode: Mode::Observe,
    },
    TheoremRecord {
        id: "T11",
        summary: "upper semimodular algebras are almost abelian or nilpotent",
        field: FieldHypothesis::AlgClosed,
        forbidden_char: None,
        structural: None,
        mode: Mode::Observe,
    },
    TheoremRecord {
        id: "T12",
        summary: "lower semimodularity, the equal-chain property, and supersolvability \
                  coincide",
        field: FieldHypothesis::AlgClosed,
        forbidden_char: None,
        structural: None,
        mode: Mode::Observe,
    },
    TheoremRecord {
        id: "T13",
        summary: "atomistic algebras have no p-nilpotent cyclic restricted subalgebra \
                  of dimension above one (necessity direction, any field)",
        field: FieldHypothesis::Any,
        forbidden_char: None,
        structural: None,
        mode: Mode::Assert,
    },
    TheoremRecord {
        id: "T14",
        summary: "supersolvable algebras possess a complete flag of restricted ideals",
        field: FieldHypothesis::AlgClosed,
        forbidden_char: None,
        structural: None,
        mode: Mode::Observe,
    },
    TheoremRecord {
        id: "T15",
        summary: "algebras with a dually atomistic ordinary lattice are abelian, almost \
                  abelian, or have zero solvable radical",
        field: FieldHypothesis::Any,
        forbidden_char: None,
        structural: None,
        mode: Mode::Assert,
    },
];

pub fn catalog() -> &'static [TheoremRecord] {
    &CATALOG
}

pub fn theorem(id: &str) -> Option<&'static TheoremRecord> {
    CATALOG.iter().find(|r| r.id == id)
}

/// Result of checking one catalog entry on one algebra.
#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub theorem: String,
    pub mode: Mode,
    /// False when the standing hypotheses (characteristic, nilpotency) fail.
    pub applicable: bool,
    /// None exactly when not applicable.
    pub holds: Option<bool>,
    pub witness: Option<String>,
}

impl Outcome {
    fn new(rec: &TheoremRecord, applicable: bool, holds: Option<bool>, witness: Option<String>) -> Self {
        Outcome { theorem: rec.id.to_string(), mode: rec.mode, applicable, holds, witness }
    }
}

fn pred_witness(r: &PredicateReport) -> String {
    match &r.witness {
        Some(w) => format!("{} fails at ({}): {}", r.predicate, w.labels.join(", "), w.note),
        None => format!("{} fails", r.predicate),
    }
}

fn span_label(l: &RestrictedLieAlgebra, s: &Subspace) -> String {
    if s.is_zero() {
        return "0".to_string();
    }
    let parts: Vec<String> = s.basis_rows().map(|r| l.render_vec(r)).collect();
    format!("span{{{}}}", parts.join(", "))
}

/// Checks one catalog entry against one algebra.  Budgeted sublattice and
/// element enumerations can fail with ResourceLimit; callers record such
/// checks as skipped.
pub fn check_instance(
    l: &RestrictedLieAlgebra,
    theorem_id: &str,
    budget: u64,
) -> Result<Outcome, Error> {
    Analysis::new(l, budget).outcome(theorem_id)
}

/// Per-instance cache so that checking the whole catalog builds each lattice
/// and report once.
pub struct Analysis<'a> {
    l: &'a RestrictedLieAlgebra,
    budget: u64,
    rlat: Option<Result<SubalgebraLattice, Error>>,
    olat: Option<Result<SubalgebraLattice, Error>>,
    quasi: Option<Result<PredicateReport, Error>>,
    modular: Option<Result<PredicateReport, Error>>,
    usm: Option<Result<PredicateReport, Error>>,
    lsm: Option<Result<PredicateReport, Error>>,
    datom: Option<Result<PredicateReport, Error>>,
    datom_o: Option<Result<PredicateReport, Error>>,
    atom: Option<Result<PredicateReport, Error>>,
    jalg: Option<Result<JAlgebraReport, Error>>,
    solv: Option<structure::Solvability>,
    rads: Option<Result<structure::Radicals, Error>>,
    lp: Option<Result<Subspace, Error>>,
    ss: Option<structure::Supersolvability>,
    aa: Option<structure::AlmostAbelian>,
}

impl<'a> Analysis<'a> {
    pub fn new(l: &'a RestrictedLieAlgebra, budget: u64) -> Self {
        Analysis {
            l,
            budget,
            rlat: None,
            olat: None,
            quasi: None,
            modular: None,
            usm: None,
            lsm: None,
            datom: None,
            datom_o: None,
            atom: None,
            jalg: None,
            solv: None,
            rads: None,
            lp: None,
            ss: None,
            aa: None,
        }
    }

    fn ensure_rlat(&mut self) -> Result<(), Error> {
        if self.rlat.is_none() {
            self.rlat =
                Some(SubalgebraLattice::enumerate(self.l, LatticeMode::Restricted, self.budget));
        }
        match self.rlat.as_ref().unwrap() {
            Ok(_) => Ok(()),
            Err(e) => Err(e.clone()),
        }
    }

    fn rlat_ref(&self) -> &SubalgebraLattice {
        self.rlat.as_ref().unwrap().as_ref().unwrap()
    }

    fn ensure_olat(&mut self) -> Result<(), Error> {
        if self.olat.is_none() {
            self.olat =
                Some(SubalgebraLattice::enumerate(self.l, LatticeMode::Ordinary, self.budget));
        }
        match self.olat.as_ref().unwrap() {
            Ok(_) => Ok(()),
            Err(e) => Err(e.clone()),
        }
    }

    fn olat_ref(&self) -> &SubalgebraLattice {
        self.olat.as_ref().unwrap().as_ref().unwrap()
    }

    fn quasi_all(&mut self) -> Result<PredicateReport, Error> {
        if self.quasi.is_none() {
            let r = match self.ensure_rlat() {
                Ok(()) => self.rlat_ref().quasi_ideal_scan(),
                Err(e) => Err(e),
            };
            self.quasi = Some(r);
        }
        self.quasi.as_ref().unwrap().clone()
    }

    fn modular(&mut self) -> Result<PredicateReport, Error> {
        if self.modular.is_none() {
            let r = match self.ensure_rlat() {
                Ok(()) => self.rlat_ref().is_modular(),
                Err(e) => Err(e),
            };
            self.modular = Some(r);
        }
        self.modular.as_ref().unwrap().clone()
    }

    fn usm(&mut self) -> Result<PredicateReport, Error> {
        if self.usm.is_none() {
            let r = match self.ensure_rlat() {
                Ok(()) => self.rlat_ref().is_upper_semimodular(),
                Err(e) => Err(e),
            };
            self.usm = Some(r);
        }
        self.usm.as_ref().unwrap().clone()
    }

    fn lsm(&mut self) -> Result<PredicateReport, Error> {
        if self.lsm.is_none() {
            let r = match self.ensure_rlat() {
                Ok(()) => self.rlat_ref().is_lower_semimodular(),
                Err(e) => Err(e),
            };
            self.lsm = Some(r);
        }
        self.lsm.as_ref().unwrap().clone()
    }

    fn datom(&mut self) -> Result<PredicateReport, Error> {
        if self.datom.is_none() {
            let r = match self.ensure_rlat() {
                Ok(()) => self.rlat_ref().is_dually_atomistic(),
                Err(e) => Err(e),
            };
            self.datom = Some(r);
        }
        self.datom.as_ref().unwrap().clone()
    }

    fn datom_o(&mut self) -> Result<PredicateReport, Error> {
        if self.datom_o.is_none() {
            let r = match self.ensure_olat() {
                Ok(()) => self.olat_ref().is_dually_atomistic(),
                Err(e) => Err(e),
            };
            self.datom_o = Some(r);
        }
        self.datom_o.as_ref().unwrap().clone()
    }

    fn atomistic(&mut self) -> Result<PredicateReport, Error> {
        if self.atom.is_none() {
            let r = match self.ensure_rlat() {
                Ok(()) => self.rlat_ref().is_atomistic(),
                Err(e) => Err(e),
            };
            self.atom = Some(r);
        }
        self.atom.as_ref().unwrap().clone()
    }

    fn jalg(&mut self) -> Result<JAlgebraReport, Error> {
        if self.jalg.is_none() {
            let r = match self.ensure_rlat() {
                Ok(()) => self.rlat_ref().j_algebra(),
                Err(e) => Err(e),
            };
            self.jalg = Some(r);
        }
        self.jalg.as_ref().unwrap().clone()
    }

    fn solv(&mut self) -> structure::Solvability {
        if self.solv.is_none() {
            self.solv = Some(structure::solvability(self.l));
        }
        self.solv.clone().unwrap()
    }

    fn rads(&mut self) -> Result<structure::Radicals, Error> {
        if self.rads.is_none() {
            let r = match self.ensure_olat() {
                Ok(()) => Ok(structure::radicals_in(self.l, self.olat_ref())),
                Err(e) => Err(e),
            };
            self.rads = Some(r);
        }
        self.rads.as_ref().unwrap().clone()
    }

    fn lp(&mut self) -> Result<Subspace, Error> {
        if self.lp.is_none() {
            self.lp = Some(structure::lp_subalgebra(self.l, self.budget));
        }
        self.lp.as_ref().unwrap().clone()
    }

    fn ss(&mut self) -> structure::Supersolvability {
        if self.ss.is_none() {
            self.ss = Some(structure::supersolvability(self.l));
        }
        self.ss.clone().unwrap()
    }

    fn aa(&mut self) -> structure::AlmostAbelian {
        if self.aa.is_none() {
            self.aa = Some(structure::is_almost_abelian(self.l));
        }
        self.aa.clone().unwrap()
    }

    fn is_abelian(&self) -> bool {
        let full = Subspace::full(self.l.field(), self.l.dim());
        structure::derived_span(self.l, &full).is_zero()
    }

    fn element_budget(&self) -> Result<(), Error> {
        let count = self.l.element_count();
        if count > self.budget as u128 {
            return Err(Error::ResourceLimit {
                needed: count.min(u64::MAX as u128) as u64,
                budget: self.budget,
            });
        }
        Ok(())
    }

    pub fn outcome(&mut self, theorem_id: &str) -> Result<Outcome, Error> {
        match theorem_id {
            "T1" => self.t1(),
            "T2" => self.t2(),
            "T3" => self.t3(),
            "T4" => self.t4(),
            "T5" => self.t5(),
            "T6" => self.t6(),
            "T7" => self.t7(),
            "T8" => self.t8(),
            "T9" => self.t9(),
            "T10" => self.t10(),
            "T11" => self.t11(),
            "T12" => self.t12(),
            "T13" => self.t13(),
            "T14" => self.t14(),
            "T15" => self.t15(),
            other => Err(Error::Parse(format!("unknown theorem id: {other}"))),
        }
    }

    fn t1(&mut self) -> Result<Outcome, Error> {
        let rec = theorem("T1").unwrap();
        let q = self.quasi_all()?;
        if !q.holds {
            return Ok(Outcome::new(rec, true, Some(true), None));
        }
        for rep in [self.modular()?, self.usm()?, self.lsm()?] {
            if !rep.holds {
                return Ok(Outcome::new(rec, true, Some(false), Some(pred_witness(&rep))));
            }
        }
        Ok(Outcome::new(rec, true, Some(true), None))
    }

    fn t2(&mut self) -> Result<Outcome, Error> {
        let rec = theorem("T2").unwrap();
        let q = self.quasi_all()?;
        if !q.holds {
            return Ok(Outcome::new(rec, true, Some(true), None));
        }
        let lp = self.lp()?;
        let full = Subspace::full(self.l.field(), self.l.dim());
        let derived = structure::derived_span(self.l, &full);
        if !lp.contains(&derived) {
            let w = format!(
                "derived algebra {} is not inside the p-th power subalgebra {}",
                span_label(self.l, &derived),
                span_label(self.l, &lp)
            );
            return Ok(Outcome::new(rec, true, Some(false), Some(w)));
        }
        let solv = self.solv();
        if solv.nilpotent && solv.class.unwrap() > 2 {
            let w = format!("nilpotency class {} exceeds 2", solv.class.unwrap());
            return Ok(Outcome::new(rec, true, Some(false), Some(w)));
        }
        Ok(Outcome::new(rec, true, Some(true), None))
    }

    fn t3(&mut self) -> Result<Outcome, Error> {
        let rec = theorem("T3").unwrap();
        let da = self.datom()?;
        if !da.holds {
            return Ok(Outcome::new(rec, true, Some(true), None));
        }
        let nil = self.rads()?.nilradical;
        if !structure::is_abelian_subspace(self.l, &nil) {
            let w = format!("nilradical {} is not abelian", span_label(self.l, &nil));
            return Ok(Outcome::new(rec, true, Some(false), Some(w)));
        }
        self.ensure_rlat()?;
        let l = self.l;
        let lat = self.rlat_ref();
        for m in lat.maximal_nodes() {
            let inter = lat.node(m).intersect(&nil);
            if !l.classify_subspace(&inter)?.restricted_ideal {
                let w = format!(
                    "{} meets the nilradical in {}, which is not a restricted ideal",
                    lat.node_label(m),
                    span_label(l, &inter)
                );
                return Ok(Outcome::new(rec, true, Some(false), Some(w)));
            }
        }
        // Restricted closures of arbitrary nilradical subspaces are ideals.
        let nb = nil.basis().transpose();
        for cs in enumerate_subspaces(l.field(), nil.dim(), None, self.budget)? {
            let rows: Vec<Vec<Scalar>> = cs.basis_rows().map(|r| nb.apply(r)).collect();
            let closure = l.restricted_closure(&rows);
            if !l.classify_subspace(&closure)?.ideal {
                let w = format!(
                    "closure {} of a nilradical subspace is not an ideal",
                    span_label(l, &closure)
                );
                return Ok(Outcome::new(rec, true, Some(false), Some(w)));
            }
        }
        Ok(Outcome::new(rec, true, Some(true), None))
    }

    fn t4(&mut self) -> Result<Outcome, Error> {
        let rec = theorem("T4").unwrap();
        let lsm = self.lsm()?;
        if !lsm.holds {
            return Ok(Outcome::new(rec, true, Some(true), None));
        }
        let j = self.jalg()?;
        if j.is_j {
            Ok(Outcome::new(rec, true, Some(true), None))
        } else {
            let w = j
                .witness
                .map(|w| format!("unequal maximal chains at ({})", w.labels.join(", ")));
            Ok(Outcome::new(rec, true, Some(false), w))
        }
    }

    fn t5(&mut self) -> Result<Outcome, Error> {
        let rec = theorem("T5").unwrap();
        let applicable = self.l.field().p() != 2 && self.solv().nilpotent;
        if !applicable {
            return Ok(Outcome::new(rec, false, None, None));
        }
        let lhs = self.quasi_all()?.holds;
        let (rhs, detail) = self.t5_splitting()?;
        if lhs == rhs {
            Ok(Outcome::new(rec, true, Some(true), None))
        } else {
            let mut w = format!(
                "all-quasi-ideal is {lhs} but the toral/p-nilpotent splitting is {rhs}"
            );
            if let Some(d) = detail {
                w.push_str(&format!(" ({d})"));
            }
            Ok(Outcome::new(rec, true, Some(false), Some(w)))
        }
    }

    /// Does L split as S + P with S a toral ideal and P a p-nilpotent ideal
    /// in which every restricted subalgebra is a quasi-ideal?
    fn t5_splitting(&mut self) -> Result<(bool, Option<String>), Error> {
        self.element_budget()?;
        let l = self.l;
        let f = l.field().clone();
        let n = l.dim();
        let mut s_rows = Vec::new();
        let mut p_rows = Vec::new();
        for v in l.coordinate_vectors() {
            let c = structure::element_class(l, &v);
            if c.semisimple {
                s_rows.push(v.clone());
            }
            if c.p_nilpotent {
                p_rows.push(v);
            }
        }
        let s_span = Subspace::from_vectors(&f, n, &s_rows);
        let p_span = Subspace::from_vectors(&f, n, &p_rows);
        if s_span.dim() + p_span.dim() != n || !s_span.intersect(&p_span).is_zero() {
            return Ok((false, Some("semisimple and p-nilpotent spans do not split the space".into())));
        }
        for v in p_span.elements() {
            if !structure::element_class(l, &v).p_nilpotent {
                return Ok((false, Some(format!(
                    "{} lies in the span of p-nilpotent elements but is not p-nilpotent",
                    l.render_vec(&v)
                ))));
            }
        }
        if !structure::is_torus(l, &s_span) {
            return Ok((false, Some(format!("{} is not a torus", span_label(l, &s_span)))));
        }
        if !l.classify_subspace(&s_span)?.ideal || !l.classify_subspace(&p_span)?.ideal {
            return Ok((false, Some("one summand is not an ideal".into())));
        }
        if !structure::bracket_span(l, &s_span, &p_span).is_zero() {
            return Ok((false, Some("the summands do not commute".into())));
        }
        // Every restricted subalgebra of P must be a quasi-ideal inside P;
        // trivially so when P is abelian.
        if structure::bracket_span(l, &p_span, &p_span).is_zero() {
            return Ok((true, None));
        }
        self.ensure_rlat()?;
        let lat = self.rlat_ref();
        let pnodes: Vec<usize> =
            (0..lat.node_count()).filter(|&i| p_span.contains(lat.node(i))).collect();
        let pairs = (pnodes.len() as u64).saturating_mul(pnodes.len() as u64);
        if pairs > self.budget {
            return Err(Error::ResourceLimit { needed: pairs, budget: self.budget });
        }
        for &a in &pnodes {
            for &b in &pnodes {
                let s = lat.node(a);
                let h = lat.node(b);
                let sum = s.sum(h);
                for x in s.basis_rows() {
                    for y in h.basis_rows() {
                        if !sum.contains_vec(&l.bracket_vec(x, y)) {
                            return Ok((false, Some(format!(
                                "({}, {}) breaks the quasi-ideal property inside the p-nilpotent part",
                                lat.node_label(a),
                                lat.node_label(b)
                            ))));
                        }
                    }
                }
            }
        }
        Ok((true, None))
    }

    fn t6(&mut self) -> Result<Outcome, Error> {
        let rec = theorem("T6").unwrap();
        let lp = self.lp()?;
        let ideal = self.l.classify_subspace(&lp)?.ideal;
        if ideal {
            // An ideal is always a quasi-ideal, so the two sides agree.
            return Ok(Outcome::new(rec, true, Some(true), None));
        }
        self.ensure_rlat()?;
        let l = self.l;
        let lat = self.rlat_ref();
        let mut quasi = true;
        'scan: for i in 0..lat.node_count() {
            let h = lat.node(i);
            let sum = lp.sum(h);
            for x in lp.basis_rows() {
                for y in h.basis_rows() {
                    if !sum.contains_vec(&l.bracket_vec(x, y)) {
                        quasi = false;
                        break 'scan;
                    }
                }
            }
        }
        if !quasi {
            Ok(Outcome::new(rec, true, Some(true), None))
        } else {
            let w = format!(
                "p-th power subalgebra {} is a quasi-ideal but not an ideal",
                span_label(l, &lp)
            );
            Ok(Outcome::new(rec, true, Some(false), Some(w)))
        }
    }

    fn t7(&mut self) -> Result<Outcome, Error> {
        let rec = theorem("T7").unwrap();
        self.ensure_rlat()?;
        let l = self.l;
        let lat = self.rlat_ref();
        for i in 0..lat.node_count() {
            let core = structure::core(l, lat.node(i))?;
            if !l.classify_subspace(&core)?.restricted_ideal {
                let w = format!(
                    "core {} of {} is not a restricted ideal",
                    span_label(l, &core),
                    lat.node_label(i)
                );
                return Ok(Outcome::new(rec, true, Some(false), Some(w)));
            }
        }
        Ok(Outcome::new(rec, true, Some(true), None))
    }

    fn t8(&mut self) -> Result<Outcome, Error> {
        let rec = theorem("T8").unwrap();
        if !self.solv().solvable || !self.datom()?.holds {
            return Ok(Outcome::new(rec, true, Some(true), None));
        }
        let m = matches_prop_solvable_form(self.l, self.budget)?;
        if m.matches {
            Ok(Outcome::new(rec, true, Some(true), None))
        } else {
            Ok(Outcome::new(rec, true, Some(false), m.witness))
        }
    }

    fn t9(&mut self) -> Result<Outcome, Error> {
        let rec = theorem("T9").unwrap();
        if !structure::is_perfect(self.l) || !self.datom_o()?.holds {
            return Ok(Outcome::new(rec, true, Some(true), None));
        }
        self.ensure_olat()?;
        let l = self.l;
        let lat = self.olat_ref();
        for i in 0..lat.node_count() {
            if !l.classify_subspace(lat.node(i))?.restricted_subalgebra {
                let w = format!("{} is a subalgebra but not restricted", lat.node_label(i));
                return Ok(Outcome::new(rec, true, Some(false), Some(w)));
            }
        }
        Ok(Outcome::new(rec, true, Some(true), None))
    }

    fn t10(&mut self) -> Result<Outcome, Error> {
        let rec = theorem("T10").unwrap();
        let u = self.usm()?.holds;
        let m = self.modular()?.holds;
        let q = self.quasi_all()?.holds;
        let equiv = u == m && m == q;
        let solv = self.solv();
        let shape = self.aa().is_almost_abelian
            || (solv.nilpotent && solv.class.unwrap() <= 2);
        let holds = equiv && (!u || shape);
        let w = (!holds).then(|| {
            format!("usm={u}, modular={m}, all_quasi={q}, almost_abelian_or_class_le_2={shape}")
        });
        Ok(Outcome::new(rec, true, Some(holds), w))
    }

    fn t11(&mut self) -> Result<Outcome, Error> {
        let rec = theorem("T11").unwrap();
        let u = self.usm()?.holds;
        let shape = self.aa().is_almost_abelian || self.solv().nilpotent;
        let holds = !u || shape;
        let w = (!holds).then(|| "upper semimodular but neither almost abelian nor nilpotent".to_string());
        Ok(Outcome::new(rec, true, Some(holds), w))
    }

    fn t12(&mut self) -> Result<Outcome, Error> {
        let rec = theorem("T12").unwrap();
        let lsm = self.lsm()?.holds;
        let j = self.jalg()?.is_j;
        let ss = self.ss().supersolvable;
        let holds = lsm == j && j == ss;
        let w = (!holds).then(|| format!("lsm={lsm}, equal_chains={j}, supersolvable={ss}"));
        Ok(Outcome::new(rec, true, Some(holds), w))
    }

    fn t13(&mut self) -> Result<Outcome, Error> {
        let rec = theorem("T13").unwrap();
        if !self.atomistic()?.holds {
            return Ok(Outcome::new(rec, true, Some(true), None));
        }
        self.element_budget()?;
        let l = self.l;
        for v in l.coordinate_vectors() {
            if structure::element_class(l, &v).p_nilpotent {
                let cyc = l.restricted_closure(&[v.clone()]);
                if cyc.dim() > 1 {
                    let w = format!(
                        "p-nilpotent element {} generates {} of dimension {}",
                        l.render_vec(&v),
                        span_label(l, &cyc),
                        cyc.dim()
                    );
                    return Ok(Outcome::new(rec, true, Some(false), Some(w)));
                }
            }
        }
        Ok(Outcome::new(rec, true, Some(true), None))
    }

    fn t14(&mut self) -> Result<Outcome, Error> {
        let rec = theorem("T14").unwrap();
        let ss = self.ss();
        let holds = !ss.supersolvable || ss.restricted_ideal_flag.is_some();
        let w = (!holds).then(|| "supersolvable but no complete flag of restricted ideals".to_string());
        Ok(Outcome::new(rec, true, Some(holds), w))
    }

    fn t15(&mut self) -> Result<Outcome, Error> {
        let rec = theorem("T15").unwrap();
        if !self.datom_o()?.holds {
            return Ok(Outcome::new(rec, true, Some(true), None));
        }
        if self.is_abelian() || self.aa().is_almost_abelian {
            return Ok(Outcome::new(rec, true, Some(true), None));
        }
        let r = self.rads()?;
        if r.solvable_radical.is_zero() {
            Ok(Outcome::new(rec, true, Some(true), None))
        } else {
            let w = format!(
                "neither abelian nor almost abelian, and the solvable radical is {}",
                span_label(self.l, &r.solvable_radical)
            );
            Ok(Outcome::new(rec, true, Some(false), Some(w)))
        }
    }
}

/// Verdict of the solvable-dually-atomistic normal form test.
#[derive(Clone, Debug, Serialize)]
pub struct FormMatch {
    pub matches: bool,
    pub witness: Option<String>,
}

/// Tests the structural normal form expected of solvable dually atomistic
/// algebras: abelian, or an abelian codimension-one nilradical with a toral
/// complement generator acting as a projection, nontrivially, with the
/// center meeting its image trivially and cyclic minimal central blocks.
pub fn matches_prop_solvable_form(
    l: &RestrictedLieAlgebra,
    budget: u64,
) -> Result<FormMatch, Error> {
    let solv = structure::solvability(l);
    if !solv.solvable {
        return Err(Error::NotSolvable);
    }
    let f = l.field().clone();
    let n = l.dim();
    let full = Subspace::full(&f, n);
    if structure::derived_span(l, &full).is_zero() {
        return Ok(FormMatch { matches: true, witness: Some("abelian".into()) });
    }
    let no = |why: String| Ok(FormMatch { matches: false, witness: Some(why) });
    let nil = structure::radicals(l, budget)?.nilradical;
    if !structure::is_abelian_subspace(l, &nil) {
        return no(format!("nilradical {} is not abelian", span_label(l, &nil)));
    }
    if nil.dim() + 1 != n {
        return no(format!("nilradical has codimension {}", n - nil.dim()));
    }
    // Minimal restricted ideals inside the center must be cyclic.
    let z = structure::center(l);
    let lat = SubalgebraLattice::enumerate(l, LatticeMode::Restricted, budget)?;
    let rids: Vec<usize> = (0..lat.node_count())
        .filter(|&i| lat.is_restricted_ideal(i) && lat.node(i).dim() > 0)
        .collect();
    for &i in &rids {
        let minimal = rids.iter().all(|&j| j == i || !lat.leq(j, i));
        if !minimal || !z.contains(lat.node(i)) {
            continue;
        }
        let cyclic = lat
            .node(i)
            .elements()
            .any(|v| l.restricted_closure(&[v]) == *lat.node(i));
        if !cyclic {
            return no(format!("minimal central restricted ideal {} is not cyclic", lat.node_label(i)));
        }
    }
    // A toral complement generator acting as a projection on the nilradical,
    // with nonzero image meeting the center trivially.
    let count = l.element_count();
    if count > budget as u128 {
        return Err(Error::ResourceLimit {
            needed: count.min(u64::MAX as u128) as u64,
            budget,
        });
    }
    for b in l.coordinate_vectors() {
        if nil.contains_vec(&b) || l.p_power_vec(&b) != b {
            continue;
        }
        let projection = nil.basis_rows().all(|a| {
            let ba = l.bracket_vec(&b, a);
            l.bracket_vec(&b, &ba) == ba
        });
        if !projection {
            continue;
        }
        let image_rows: Vec<Vec<Scalar>> =
            nil.basis_rows().map(|a| l.bracket_vec(&b, a)).collect();
        let image = Subspace::from_vectors(&f, n, &image_rows);
        if image.is_zero() || !z.intersect(&image).is_zero() {
            continue;
        }
        return Ok(FormMatch {
            matches: true,
            witness: Some(format!("b = {}", l.render_vec(&b))),
        });
    }
    no("no toral complement generator acts as a nontrivial projection on the nilradical".into())
}

const fn default_true() -> bool {
    true
}

fn default_fields() -> Vec<CorpusField> {
    vec![
        CorpusField { p: 2, k: 1, max_dim: 5 },
        CorpusField { p: 3, k: 1, max_dim: 5 },
        CorpusField { p: 5, k: 1, max_dim: 5 },
        CorpusField { p: 2, k: 2, max_dim: 3 },
        CorpusField { p: 3, k: 2, max_dim: 3 },
    ]
}

const fn default_corpus_budget() -> u64 {
    DEFAULT_CORPUS_BUDGET
}

/// Default per-instance budget for corpus runs; large enough for the full
/// subspace lattices of five-dimensional algebras over GF(3).
pub const DEFAULT_CORPUS_BUDGET: u64 = 200_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusField {
    pub p: u64,
    #[serde(default = "default_k")]
    pub k: u32,
    pub max_dim: usize,
}

const fn default_k() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusConfig {
    #[serde(default = "default_fields")]
    pub fields: Vec<CorpusField>,
    #[serde(default = "default_corpus_budget")]
    pub budget: u64,
    /// Also run the exhaustive structure-constant sweeps over the prime
    /// fields of size at most 3.
    #[serde(default = "default_true")]
    pub sweeps: bool,
    /// Restrict to these catalog ids (default: the whole catalog).
    #[serde(default)]
    pub theorems: Option<Vec<String>>,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            fields: default_fields(),
            budget: DEFAULT_CORPUS_BUDGET,
            sweeps: true,
            theorems: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SkippedCheck {
    pub theorem: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceReport {
    pub key: String,
    pub dim: usize,
    pub outcomes: Vec<Outcome>,
    pub skipped: Vec<SkippedCheck>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Totals {
    pub instances: usize,
    pub checks: usize,
    pub asserts_passed: usize,
    pub assert_failures: usize,
    pub observe_checked: usize,
    pub observe_discrepancies: usize,
    pub inapplicable: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct AssertFailure {
    pub instance: String,
    pub theorem: String,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AggregateReport {
    pub schema_version: u32,
    pub config: CorpusConfig,
    pub instances: Vec<InstanceReport>,
    pub totals: Totals,
    pub assert_failures: Vec<AssertFailure>,
}

/// First monic irreducible of the given degree in canonical coefficient
/// order (constant coefficient fastest), if one exists.
pub fn first_irreducible(f: &FiniteField, degree: usize) -> Option<SkewPolynomial> {
    let q = f.q() as u64;
    let total = q.checked_pow(degree as u32)?;
    for code in 0..total {
        let mut c = code;
        let mut coeffs: Vec<Scalar> = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            coeffs.push((c % q) as Scalar);
            c /= q;
        }
        coeffs.push(f.one());
        let poly = SkewPolynomial::new(f, coeffs);
        if sp_irreducible_unbudgeted(&poly) {
            return Some(poly);
        }
    }
    None
}

fn sp_irreducible_unbudgeted(poly: &SkewPolynomial) -> bool {
    families::sp_irreducible(poly, u64::MAX).unwrap_or(false)
}

/// Deterministic instance list for one field: the named families within the
/// dimension cap, cyclic algebras from a small skew-polynomial catalog,
/// normal-form builders, and optionally the structure-constant sweeps.
fn field_instances(
    f: &FiniteField,
    max_dim: usize,
    sweeps: bool,
    out: &mut Vec<(String, RestrictedLieAlgebra)>,
) -> Result<(), Error> {
    let tag = format!("gf({})", f.q());
    let mut push = |name: String, alg: RestrictedLieAlgebra| {
        out.push((format!("{tag}/{name}"), alg));
    };
    for n in 1..=max_dim {
        push(format!("strongly_abelian({n})"), families::strongly_abelian(f, n));
    }
    for n in 1..=max_dim {
        push(format!("torus({n})"), families::torus(f, n));
    }
    // One toral direction, the rest with zero p-map.
    for n in 2..=max_dim {
        let mut rows = vec![vec![0 as Scalar; n]; n];
        rows[0][0] = f.one();
        push(
            format!("abelian_mixed({n})"),
            families::abelian(f, n, AbelianPmap::Custom(rows))?,
        );
    }
    for a in 1..max_dim {
        push(format!("almost_abelian({a})"), families::almost_abelian(f, a)?);
    }
    if max_dim >= 3 {
        push("heisenberg_null".into(), families::heisenberg_null(f));
    }
    if max_dim >= 4 {
        push("usmn".into(), families::usmn(f));
    }
    if max_dim >= 3 && f.p() > 2 {
        push("sl2".into(), families::sl2(f)?);
    }

    let deg_cap = max_dim.min(3);
    let mut cyclic_polys: Vec<SkewPolynomial> = Vec::new();
    cyclic_polys.push(SkewPolynomial::from_ints(f, &[0, 1]));
    cyclic_polys.push(SkewPolynomial::from_ints(f, &[-1, 1]));
    if deg_cap >= 2 {
        cyclic_polys.push(SkewPolynomial::from_ints(f, &[0, 0, 1]));
        if let Some(p2) = first_irreducible(f, 2) {
            cyclic_polys.push(p2);
        }
    }
    if deg_cap >= 3 {
        cyclic_polys.push(SkewPolynomial::from_ints(f, &[0, 0, 0, 1]));
        if let Some(p3) = first_irreducible(f, 3) {
            cyclic_polys.push(p3);
        }
    }
    for poly in &cyclic_polys {
        if poly.degree().unwrap() <= deg_cap {
            push(format!("cyclic({poly:?})"), families::cyclic_from(poly)?);
        }
    }

    let t = SkewPolynomial::from_ints(f, &[0, 1]);
    let t1 = SkewPolynomial::from_ints(f, &[-1, 1]);
    let irr2 = first_irreducible(f, 2);
    let mut factor_sets: Vec<Vec<SkewPolynomial>> =
        vec![vec![], vec![t.clone()], vec![t1.clone()], vec![t.clone(), t1.clone()]];
    if let Some(p2) = irr2 {
        factor_sets.push(vec![p2]);
    }
    for factors in &factor_sets {
        let central: usize = factors.iter().map(|p| p.degree().unwrap()).sum();
        for m in 1..=2usize {
            if central + m + 1 > max_dim {
                continue;
            }
            let flist: Vec<String> = factors.iter().map(|p| format!("{p:?}")).collect();
            push(
                format!("prop_solvable([{}]; m={m})", flist.join(", ")),
                families::prop_solvable(f, factors, m)?,
            );
        }
    }

    if sweeps && f.k() == 1 && f.p() <= 3 {
        sweep_instances(f, max_dim.min(3), out);
    }
    Ok(())
}

/// All bracket tables on small bases whose Lie and p-map axioms validate,
/// with the p-map solved from the bracket structure.
fn sweep_instances(
    f: &FiniteField,
    max_dim: usize,
    out: &mut Vec<(String, RestrictedLieAlgebra)>,
) {
    let q = f.q() as u64;
    let p = f.p();
    for n in 1..=max_dim {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let slots = pairs.len() * n;
        let total = q.pow(slots as u32);
        let names: Vec<String> = (1..=n).map(|i| format!("g{i}")).collect();
        let mut kept = 0usize;
        for code in 0..total {
            let mut c = code;
            let mut digits = Vec::with_capacity(slots);
            for _ in 0..slots {
                digits.push((c % q) as Scalar);
                c /= q;
            }
            let mut entries: Vec<(usize, usize, usize, Scalar)> = Vec::new();
            for (pi, &(i, j)) in pairs.iter().enumerate() {
                for k in 0..n {
                    let v = digits[pi * n + k];
                    if v != 0 {
                        entries.push((i, j, k, v));
                    }
                }
            }
            // Adjoint matrices straight from the table.
            let mut ads = vec![Mat::zero(f.clone(), n, n); n];
            for &(i, j, k, v) in &entries {
                let cur = ads[i].get(k, j);
                ads[i].set(k, j, f.add(cur, v));
                let cur = ads[j].get(k, i);
                ads[j].set(k, i, f.sub(cur, v));
            }
            // Solve ad(w_i) = ad(g_i)^p for each i; no solution means no
            // compatible p-map on this basis.
            let mut sys_rows: Vec<Vec<Scalar>> = Vec::with_capacity(n * n);
            for r in 0..n {
                for cc in 0..n {
                    sys_rows.push((0..n).map(|j| ads[j].get(r, cc)).collect());
                }
            }
            let sys = Mat::from_rows(f.clone(), n, &sys_rows);
            let mut pm_rows: Vec<Vec<Scalar>> = Vec::with_capacity(n);
            let mut ok = true;
            for ad in &ads {
                let target = ad.pow(u64::from(p));
                let mut rhs = Vec::with_capacity(n * n);
                for r in 0..n {
                    for cc in 0..n {
                        rhs.push(target.get(r, cc));
                    }
                }
                match sys.solve(&rhs) {
                    Some(w) => pm_rows.push(w),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            let pm = Mat::from_rows(f.clone(), n, &pm_rows);
            let alg = match RestrictedLieAlgebra::from_scalar_parts(
                f.clone(),
                names.clone(),
                &entries,
                pm,
            ) {
                Ok(a) => a,
                Err(_) => continue,
            };
            if !alg.validate().ok {
                continue;
            }
            out.push((format!("gf({})/sweep{}#{:05}", f.q(), n, kept), alg));
            kept += 1;
        }
    }
}

/// Runs the catalog over the deterministic corpus and merges the outcomes.
/// Assert-mode failures are collected rather than returned as errors; the
/// caller decides the process exit.  Budget exhaustion on an individual
/// check records a skip.
pub fn corpus(cfg: &CorpusConfig) -> Result<AggregateReport, Error> {
    let ids: Vec<String> = match &cfg.theorems {
        Some(list) => {
            for id in list {
                if theorem(id).is_none() {
                    return Err(Error::Parse(format!("unknown theorem id: {id}")));
                }
            }
            list.clone()
        }
        None => CATALOG.iter().map(|r| r.id.to_string()).collect(),
    };
    let mut instances: Vec<(String, RestrictedLieAlgebra)> = Vec::new();
    for cf in &cfg.fields {
        let f = FiniteField::new(cf.p, cf.k, None)?;
        field_instances(&f, cf.max_dim, cfg.sweeps, &mut instances)?;
    }
    let mut reports = Vec::with_capacity(instances.len());
    let mut totals = Totals::default();
    let mut failures = Vec::new();
    for (key, alg) in &instances {
        let mut analysis = Analysis::new(alg, cfg.budget);
        let mut outcomes = Vec::new();
        let mut skipped = Vec::new();
        for id in &ids {
            match analysis.outcome(id) {
                Ok(o) => {
                    totals.checks += 1;
                    if !o.applicable {
                        totals.inapplicable += 1;
                    } else if o.mode == Mode::Assert {
                        if o.holds == Some(true) {
                            totals.asserts_passed += 1;
                        } else {
                            totals.assert_failures += 1;
                            failures.push(AssertFailure {
                                instance: key.clone(),
                                theorem: o.theorem.clone(),
                                witness: o.witness.clone(),
                            });
                        }
                    } else {
                        totals.observe_checked += 1;
                        if o.holds == Some(false) {
                            totals.observe_discrepancies += 1;
                        }
                    }
                    outcomes.push(o);
                }
                Err(e @ Error::ResourceLimit { .. }) => {
                    totals.skipped += 1;
                    skipped.push(SkippedCheck { theorem: id.clone(), reason: e.to_string() });
                }
                Err(e) => return Err(e),
            }
        }
        reports.push(InstanceReport {
            key: key.clone(),
            dim: alg.dim(),
            outcomes,
            skipped,
        });
    }
    totals.instances = reports.len();
    Ok(AggregateReport {
        schema_version: crate::SCHEMA_VERSION,
        config: cfg.clone(),
        instances: reports,
        totals,
        assert_failures: failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn gf(p: u64) -> FiniteField {
        FiniteField::prime(p).unwrap()
    }

    #[test]
    fn catalog_has_fifteen_entries_with_stable_ids() {
        assert_eq!(catalog().len(), 15);
        for (i, rec) in catalog().iter().enumerate() {
            assert_eq!(rec.id, format!("T{}", i + 1));
        }
        assert_eq!(theorem("T5").unwrap().mode, Mode::Assert);
        assert_eq!(theorem("T5").unwrap().forbidden_char, Some(2));
        assert_eq!(theorem("T10").unwrap().mode, Mode::Observe);
        assert!(theorem("T99").is_none());
        // Assert mode only for hypotheses finite fields satisfy.
        for rec in catalog() {
            if rec.mode == Mode::Assert {
                assert_ne!(rec.field, FieldHypothesis::AlgClosed, "{}", rec.id);
            }
        }
    }

    #[test]
    fn unknown_theorem_id_is_a_parse_error() {
        let l = families::strongly_abelian(&gf(2), 1);
        match check_instance(&l, "T16", 1000) {
            Err(Error::Parse(_)) => {}
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn modularity_consequences_pass_vacuously_when_quasi_fails() {
        let l = families::usmn(&gf(2));
        let o = check_instance(&l, "T1", 100_000).unwrap();
        assert!(o.applicable);
        assert_eq!(o.holds, Some(true));
        assert!(o.witness.is_none());
    }

    #[test]
    fn splitting_equivalence_on_nilpotent_fixtures() {
        // Heisenberg over GF(3): both sides false, so the equivalence holds.
        let h = families::heisenberg_null(&gf(3));
        let o = check_instance(&h, "T5", 100_000).unwrap();
        assert!(o.applicable);
        assert_eq!(o.holds, Some(true));

        // Mixed abelian: S and P both nonzero, both sides true.
        let m = families::abelian(
            &gf(3),
            2,
            AbelianPmap::Custom(vec![vec![1, 0], vec![0, 0]]),
        )
        .unwrap();
        let o = check_instance(&m, "T5", 100_000).unwrap();
        assert!(o.applicable);
        assert_eq!(o.holds, Some(true));

        // Torus: P = 0.
        let t = families::torus(&gf(3), 2);
        let o = check_instance(&t, "T5", 100_000).unwrap();
        assert!(o.applicable);
        assert_eq!(o.holds, Some(true));

        // Characteristic 2 and non-nilpotent instances are out of scope.
        let o = check_instance(&families::heisenberg_null(&gf(2)), "T5", 100_000).unwrap();
        assert!(!o.applicable);
        assert_eq!(o.holds, None);
        let o = check_instance(&families::almost_abelian(&gf(3), 2).unwrap(), "T5", 100_000)
            .unwrap();
        assert!(!o.applicable);
    }

    #[test]
    fn observed_equivalences_hold_on_almost_abelian() {
        let l = families::almost_abelian(&gf(3), 2).unwrap();
        let o = check_instance(&l, "T10", 1_000_000).unwrap();
        assert_eq!(o.mode, Mode::Observe);
        assert_eq!(o.holds, Some(true), "witness: {:?}", o.witness);
        let o = check_instance(&l, "T11", 1_000_000).unwrap();
        assert_eq!(o.holds, Some(true), "witness: {:?}", o.witness);
    }

    #[test]
    fn chain_condition_equivalence_on_a_torus() {
        let l = families::torus(&gf(2), 2);
        let o = check_instance(&l, "T12", 100_000).unwrap();
        assert_eq!(o.holds, Some(true), "witness: {:?}", o.witness);
    }

    #[test]
    fn cores_are_restricted_ideals_on_fixture() {
        let l = families::usmn(&gf(2));
        let o = check_instance(&l, "T7", 100_000).unwrap();
        assert_eq!(o.holds, Some(true), "witness: {:?}", o.witness);
    }

    #[test]
    fn atomistic_necessity_is_non_vacuous_on_heisenberg() {
        let l = families::heisenberg_null(&gf(3));
        let mut a = Analysis::new(&l, 100_000);
        assert!(a.atomistic().unwrap().holds, "fixture should be atomistic");
        let o = a.outcome("T13").unwrap();
        assert_eq!(o.holds, Some(true), "witness: {:?}", o.witness);
    }

    #[test]
    fn normal_form_matcher() {
        // Abelian algebras match trivially.
        let m = matches_prop_solvable_form(&families::strongly_abelian(&gf(3), 3), 100_000)
            .unwrap();
        assert!(m.matches);
        assert_eq!(m.witness.as_deref(), Some("abelian"));

        // The builder's own output matches its normal form.
        let t1 = SkewPolynomial::from_ints(&gf(3), &[-1, 1]);
        let l = families::prop_solvable(&gf(3), &[t1], 1).unwrap();
        let m = matches_prop_solvable_form(&l, 100_000).unwrap();
        assert!(m.matches, "witness: {:?}", m.witness);
        assert!(m.witness.unwrap().starts_with("b = "));

        // Heisenberg is its own nilradical, so no codimension-one split.
        let m = matches_prop_solvable_form(&families::heisenberg_null(&gf(3)), 100_000)
            .unwrap();
        assert!(!m.matches);

        // Non-solvable input is rejected.
        match matches_prop_solvable_form(&families::sl2(&gf(5)).unwrap(), 100_000) {
            Err(Error::NotSolvable) => {}
            other => panic!("expected NotSolvable, got {other:?}"),
        }
    }

    #[test]
    fn first_irreducibles_in_canonical_order() {
        let f2 = gf(2);
        let p = first_irreducible(&f2, 2).unwrap();
        assert_eq!(p.coeffs(), &[1, 1, 1]);
        let p = first_irreducible(&f2, 3).unwrap();
        assert_eq!(p.coeffs(), &[1, 1, 0, 1]);
        // Twisted case: over GF(4) the degree-2 candidates t^2 + a with a
        // outside the prime field have no linear right factor.
        let f4 = FiniteField::new(2, 2, None).unwrap();
        let p = first_irreducible(&f4, 2).unwrap();
        assert!(families::sp_irreducible(&p, 1_000_000).unwrap());
    }

    #[test]
    fn corpus_is_deterministic_and_clean_over_gf2() {
        let cfg = CorpusConfig {
            fields: vec![CorpusField { p: 2, k: 1, max_dim: 3 }],
            budget: 1_000_000,
            sweeps: true,
            theorems: None,
        };
        let a = corpus(&cfg).unwrap();
        let b = corpus(&cfg).unwrap();
        let ja = serde_json::to_string(&a).unwrap();
        let jb = serde_json::to_string(&b).unwrap();
        assert_eq!(ja, jb);
        assert!(a.totals.instances > 20, "got {}", a.totals.instances);
        assert_eq!(a.totals.assert_failures, 0, "failures: {:?}", a.assert_failures);
        assert_eq!(a.totals.instances, a.instances.len());
        // Sweep keys are present and sequential.
        assert!(a.instances.iter().any(|i| i.key == "gf(2)/sweep2#00000"));
    }

    #[test]
    fn corpus_rejects_unknown_theorem_filter() {
        let cfg = CorpusConfig {
            fields: vec![CorpusField { p: 2, k: 1, max_dim: 1 }],
            budget: 1000,
            sweeps: false,
            theorems: Some(vec!["T1".into(), "bogus".into()]),
        };
        match corpus(&cfg) {
            Err(Error::Parse(_)) => {}
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn corpus_with_no_fields_is_empty() {
        let cfg = CorpusConfig { fields: vec![], budget: 1000, sweeps: true, theorems: None };
        let r = corpus(&cfg).unwrap();
        assert_eq!(r.totals.instances, 0);
        assert!(r.instances.is_empty());
    }

    #[test]
    fn theorem_filter_restricts_outcomes() {
        let cfg = CorpusConfig {
            fields: vec![CorpusField { p: 3, k: 1, max_dim: 2 }],
            budget: 100_000,
            sweeps: false,
            theorems: Some(vec!["T1".into(), "T5".into()]),
        };
        let r = corpus(&cfg).unwrap();
        assert!(r.totals.instances > 0);
        for inst in &r.instances {
            for o in &inst.outcomes {
                assert!(o.theorem == "T1" || o.theorem == "T5");
            }
        }
    }

    #[test]
    fn config_deserializes_with_defaults() {
        let cfg: CorpusConfig = serde_json::from_str("{}").unwrap();
        assert_eq!(cfg, CorpusConfig::default());
        let cfg: CorpusConfig =
            serde_json::from_str(r#"{"fields": [{"p": 7, "max_dim": 2}], "sweeps": false}"#)
                .unwrap();
        assert_eq!(cfg.fields, vec![CorpusField { p: 7, k: 1, max_dim: 2 }]);
        assert!(!cfg.sweeps);
        assert_eq!(cfg.budget, DEFAULT_CORPUS_BUDGET);
    }
}

#[cfg(test)]
mod slow {
    use super::*;

    // Run with --ignored --nocapture to time the default corpus and list
    // every observe-mode discrepancy.
    #[test]
    #[ignore]
    fn default_corpus_smoke() {
        for (p, k, max_dim) in [(2u64, 1u32, 5usize), (3, 1, 5), (5, 1, 5), (2, 2, 3), (3, 2, 3)] {
            let cfg = CorpusConfig {
                fields: vec![CorpusField { p, k, max_dim }],
                budget: DEFAULT_CORPUS_BUDGET,
                sweeps: true,
                theorems: None,
            };
            let t0 = std::time::Instant::now();
            let r = corpus(&cfg).unwrap();
            println!(
                "gf({}^{}) dim<={}: {} instances, {} checks, {} skips, {} assert failures, {} observe discrepancies, {:.1}s",
                p, k, max_dim,
                r.totals.instances, r.totals.checks, r.totals.skipped,
                r.totals.assert_failures, r.totals.observe_discrepancies,
                t0.elapsed().as_secs_f64()
            );
            for fail in &r.assert_failures {
                println!("  FAIL {} {} {:?}", fail.instance, fail.theorem, fail.witness);
            }
            for inst in &r.instances {
                for o in &inst.outcomes {
                    if o.mode == Mode::Observe && o.holds == Some(false) {
                        println!("  observe {} {} {:?}", inst.key, o.theorem, o.witness);
                    }
                }
            }
        }
    }
}
