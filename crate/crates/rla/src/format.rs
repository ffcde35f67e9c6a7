//! AlgebraSpec JSON round-trip and the report document shapes the CLI
//! emits.  Scalars travel as canonical residues: a plain integer code over
//! a prime field, an array of base-p digits (constant digit first) over an
//! extension.  parse(serialize(L)) reproduces L bit-exactly.

use serde::{Deserialize, Serialize};

use crate::algebra::{RestrictedLieAlgebra, ValidationReport};
use crate::error::Error;
use crate::field::{FiniteField, Scalar};
use crate::harness::{Outcome, SkippedCheck};
use crate::lattice::{JAlgebraReport, LatticeMode, PredicateReport, SubalgebraLattice};
use crate::linalg::{Mat, Subspace};
use crate::structure::{self, SeriesKind};

/// A field element in a document: integer code over a prime field, base-p
/// digit array over an extension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Int(i64),
    Digits(Vec<i64>),
}

pub fn scalar_to_repr(f: &FiniteField, a: Scalar) -> ScalarRepr {
    if f.k() == 1 {
        ScalarRepr::Int(i64::from(a))
    } else {
        ScalarRepr::Digits(f.residues(a).into_iter().map(i64::from).collect())
    }
}

pub fn scalar_from_repr(f: &FiniteField, r: &ScalarRepr, what: &str) -> Result<Scalar, Error> {
    match r {
        ScalarRepr::Int(c) => {
            if *c < 0 || *c >= i64::from(f.q()) {
                return Err(Error::Parse(format!(
                    "{what}: {c} is not a canonical residue (expected 0..{})",
                    f.q() - 1
                )));
            }
            Ok(*c as Scalar)
        }
        ScalarRepr::Digits(ds) => {
            if ds.len() > f.k() as usize {
                return Err(Error::Parse(format!(
                    "{what}: {} digits exceed extension degree {}",
                    ds.len(),
                    f.k()
                )));
            }
            for d in ds {
                if *d < 0 || *d >= i64::from(f.p()) {
                    return Err(Error::Parse(format!(
                        "{what}: digit {d} is not a canonical residue mod {}",
                        f.p()
                    )));
                }
            }
            f.from_residues(ds)
        }
    }
}

pub fn vec_to_repr(f: &FiniteField, v: &[Scalar]) -> Vec<ScalarRepr> {
    v.iter().map(|&a| scalar_to_repr(f, a)).collect()
}

const fn default_one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    #[serde(default = "default_one")]
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<i64>>,
}

/// On-disk description of a restricted Lie algebra: structure constants
/// for i < j and the p-map images of the basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub field: FieldSpec,
    pub dim: usize,
    pub names: Vec<String>,
    pub brackets: Vec<(usize, usize, usize, ScalarRepr)>,
    pub pmap: Vec<Vec<ScalarRepr>>,
}

pub fn parse_spec(text: &str) -> Result<AlgebraSpec, Error> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn serialize_spec(spec: &AlgebraSpec) -> String {
    let mut out = serde_json::to_string_pretty(spec).expect("spec serialization cannot fail");
    out.push('\n');
    out
}

/// Builds the algebra a spec describes.  Checks shapes, index ranges, and
/// residue canonicity; does not check the Lie and p-map axioms (that is
/// `validate`'s job).
pub fn algebra_from_spec(spec: &AlgebraSpec) -> Result<RestrictedLieAlgebra, Error> {
    let f = FiniteField::new(spec.field.p, spec.field.k, spec.field.modulus.as_deref())?;
    let n = spec.dim;
    if spec.names.len() != n {
        return Err(Error::Parse(format!(
            "names: expected {n} entries, found {}",
            spec.names.len()
        )));
    }
    let mut entries = Vec::with_capacity(spec.brackets.len());
    for (idx, (i, j, k, c)) in spec.brackets.iter().enumerate() {
        if *i >= *j {
            return Err(Error::Parse(format!(
                "brackets[{idx}]: expected i < j, found ({i}, {j})"
            )));
        }
        if *j >= n || *k >= n {
            return Err(Error::Parse(format!(
                "brackets[{idx}]: index out of range for dimension {n}"
            )));
        }
        let c = scalar_from_repr(&f, c, &format!("brackets[{idx}] coefficient"))?;
        entries.push((*i, *j, *k, c));
    }
    if spec.pmap.len() != n {
        return Err(Error::Parse(format!(
            "pmap: expected {n} rows, found {}",
            spec.pmap.len()
        )));
    }
    let mut rows = Vec::with_capacity(n);
    for (i, row) in spec.pmap.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Parse(format!(
                "pmap[{i}]: expected {n} coordinates, found {}",
                row.len()
            )));
        }
        let mut r = Vec::with_capacity(n);
        for (j, c) in row.iter().enumerate() {
            r.push(scalar_from_repr(&f, c, &format!("pmap[{i}][{j}]"))?);
        }
        rows.push(r);
    }
    let pm = Mat::from_rows(f.clone(), n, &rows);
    RestrictedLieAlgebra::from_scalar_parts(f, spec.names.clone(), &entries, pm)
}

/// Canonical spec of an existing algebra: brackets listed for i < j in
/// lexicographic order with zero coefficients dropped.
pub fn spec_from_algebra(l: &RestrictedLieAlgebra) -> AlgebraSpec {
    let f = l.field();
    let n = l.dim();
    let unit = |i: usize| {
        let mut v = vec![0 as Scalar; n];
        v[i] = f.one();
        v
    };
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let b = l.bracket_vec(&unit(i), &unit(j));
            for (k, &c) in b.iter().enumerate() {
                if c != 0 {
                    brackets.push((i, j, k, scalar_to_repr(f, c)));
                }
            }
        }
    }
    let pmap = (0..n).map(|i| vec_to_repr(f, &l.p_power_vec(&unit(i)))).collect();
    AlgebraSpec {
        field: FieldSpec {
            p: u64::from(f.p()),
            k: f.k(),
            modulus: (f.k() > 1)
                .then(|| f.modulus().iter().map(|&c| i64::from(c)).collect()),
        },
        dim: n,
        names: l.names().to_vec(),
        brackets,
        pmap,
    }
}

/// A subspace in a report: dimension, canonical basis rows, and a rendered
/// label in the algebra's basis names.
#[derive(Clone, Debug, Serialize)]
pub struct SubspaceDoc {
    pub dim: usize,
    pub basis: Vec<Vec<ScalarRepr>>,
    pub label: String,
}

pub fn subspace_doc(l: &RestrictedLieAlgebra, s: &Subspace) -> SubspaceDoc {
    let f = l.field();
    SubspaceDoc {
        dim: s.dim(),
        basis: s.basis_rows().map(|r| vec_to_repr(f, r)).collect(),
        label: if s.is_zero() {
            "0".to_string()
        } else {
            let parts: Vec<String> = s.basis_rows().map(|r| l.render_vec(r)).collect();
            format!("span{{{}}}", parts.join(", "))
        },
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesDoc {
    pub terms: Vec<SubspaceDoc>,
    pub stabilized: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlagsDoc {
    pub abelian: bool,
    pub perfect: bool,
    pub solvable: bool,
    pub nilpotent: bool,
    pub nilpotency_class: Option<usize>,
    pub derived_length: Option<usize>,
    pub supersolvable: bool,
    pub almost_abelian: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootSpaceDoc {
    pub weight: Vec<ScalarRepr>,
    pub weight_label: String,
    pub space: SubspaceDoc,
}

/// Null in the report when the maximal torus is not split (no toral basis),
/// which happens over non-closed fields.
#[derive(Clone, Debug, Serialize)]
pub struct RootsDoc {
    pub torus: SubspaceDoc,
    pub cartan: SubspaceDoc,
    pub spaces: Vec<RootSpaceDoc>,
}

/// The `analyze` command's document.
#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub schema_version: u32,
    pub field: FieldSpec,
    pub dim: usize,
    pub names: Vec<String>,
    pub flags: FlagsDoc,
    pub derived_series: SeriesDoc,
    pub lower_central_series: SeriesDoc,
    pub upper_central_series: SeriesDoc,
    pub center: SubspaceDoc,
    pub nilradical: SubspaceDoc,
    pub solvable_radical: SubspaceDoc,
    pub frattini: SubspaceDoc,
    pub frattini_p: SubspaceDoc,
    pub abelian_p_socle: SubspaceDoc,
    pub p_power_subalgebra: SubspaceDoc,
    pub maximal_torus: SubspaceDoc,
    pub roots: Option<RootsDoc>,
}

pub fn structure_report(
    l: &RestrictedLieAlgebra,
    budget: u64,
) -> Result<StructureReport, Error> {
    let spec = spec_from_algebra(l);
    let solv = structure::solvability(l);
    let full = Subspace::full(l.field(), l.dim());
    let olat = SubalgebraLattice::enumerate(l, LatticeMode::Ordinary, budget)?;
    let rlat = SubalgebraLattice::enumerate(l, LatticeMode::Restricted, budget)?;
    let rads = structure::radicals_in(l, &olat);
    let frat = structure::frattini_in(l, &olat)?;
    let ss = structure::supersolvability(l);
    let series_doc = |kind: SeriesKind| {
        let s = structure::series(l, kind);
        SeriesDoc {
            terms: s.terms.iter().map(|t| subspace_doc(l, t)).collect(),
            stabilized: s.stabilized,
        }
    };
    let torus = structure::maximal_torus_in(l, &rlat);
    let roots = match structure::root_decomposition(l, &torus) {
        Ok(r) => Some(r),
        Err(Error::NotATorus) => None,
        Err(e) => return Err(e),
    };
    Ok(StructureReport {
        schema_version: crate::SCHEMA_VERSION,
        field: spec.field,
        dim: l.dim(),
        names: l.names().to_vec(),
        flags: FlagsDoc {
            abelian: structure::derived_span(l, &full).is_zero(),
            perfect: structure::is_perfect(l),
            solvable: solv.solvable,
            nilpotent: solv.nilpotent,
            nilpotency_class: solv.class,
            derived_length: solv.derived_length,
            supersolvable: ss.supersolvable,
            almost_abelian: structure::is_almost_abelian(l).is_almost_abelian,
        },
        derived_series: series_doc(SeriesKind::Derived),
        lower_central_series: series_doc(SeriesKind::LowerCentral),
        upper_central_series: series_doc(SeriesKind::UpperCentral),
        center: subspace_doc(l, &structure::center(l)),
        nilradical: subspace_doc(l, &rads.nilradical),
        solvable_radical: subspace_doc(l, &rads.solvable_radical),
        frattini: subspace_doc(l, &frat.f_p),
        frattini_p: subspace_doc(l, &frat.phi_p),
        abelian_p_socle: subspace_doc(l, &structure::abelian_p_socle_in(l, &rlat)),
        p_power_subalgebra: subspace_doc(l, &structure::lp_subalgebra(l, budget)?),
        maximal_torus: subspace_doc(l, &torus),
        roots: roots.map(|r| RootsDoc {
            torus: subspace_doc(l, &r.torus),
            cartan: subspace_doc(l, &r.cartan),
            spaces: r
                .roots
                .iter()
                .map(|(w, s)| RootSpaceDoc {
                    weight: vec_to_repr(l.field(), w),
                    weight_label: {
                        let f = l.field();
                        let parts: Vec<String> =
                            w.iter().map(|&c| f.render(c)).collect();
                        format!("({})", parts.join(", "))
                    },
                    space: subspace_doc(l, s),
                })
                .collect(),
        }),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PredicateTable {
    pub modular: PredicateReport,
    pub upper_semimodular: PredicateReport,
    pub lower_semimodular: PredicateReport,
    pub atomistic: PredicateReport,
    pub dually_atomistic: PredicateReport,
    pub all_quasi_ideal: PredicateReport,
}

/// The `lattice` command's document.
#[derive(Clone, Debug, Serialize)]
pub struct LatticeReport {
    pub schema_version: u32,
    pub mode: LatticeMode,
    pub budget: u64,
    pub node_count: usize,
    pub atom_count: usize,
    pub maximal_count: usize,
    pub predicates: PredicateTable,
    pub j_algebra: JAlgebraReport,
}

pub fn lattice_report(lat: &SubalgebraLattice, budget: u64) -> Result<LatticeReport, Error> {
    Ok(LatticeReport {
        schema_version: crate::SCHEMA_VERSION,
        mode: lat.mode(),
        budget,
        node_count: lat.node_count(),
        atom_count: lat.atom_nodes().len(),
        maximal_count: lat.maximal_nodes().len(),
        predicates: PredicateTable {
            modular: lat.is_modular()?,
            upper_semimodular: lat.is_upper_semimodular()?,
            lower_semimodular: lat.is_lower_semimodular()?,
            atomistic: lat.is_atomistic()?,
            dually_atomistic: lat.is_dually_atomistic()?,
            all_quasi_ideal: lat.quasi_ideal_scan()?,
        },
        j_algebra: lat.j_algebra()?,
    })
}

/// The `verify` command's document.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub outcomes: Vec<Outcome>,
    pub skipped: Vec<SkippedCheck>,
    pub assert_failures: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ElementDoc {
    pub coords: Vec<ScalarRepr>,
    pub label: String,
}

pub fn element_doc(l: &RestrictedLieAlgebra, v: &[Scalar]) -> ElementDoc {
    ElementDoc { coords: vec_to_repr(l.field(), v), label: l.render_vec(v) }
}

/// The `jc` command's document.
#[derive(Clone, Debug, Serialize)]
pub struct JcReport {
    pub schema_version: u32,
    pub element: ElementDoc,
    pub semisimple: ElementDoc,
    pub p_nilpotent: ElementDoc,
}

/// The `validate` command's document.
#[derive(Clone, Debug, Serialize)]
pub struct ValidateReport {
    pub schema_version: u32,
    pub report: ValidationReport,
}

// Text renderings: one fact per line, suitable for terminals and diffs.

fn pred_line(name: &str, r: &PredicateReport) -> String {
    match &r.witness {
        Some(w) => format!(
            "{name}: {} (witness nodes {:?}: {})",
            r.holds,
            w.nodes,
            w.labels.join(", ")
        ),
        None => format!("{name}: {}", r.holds),
    }
}

pub fn structure_text(r: &StructureReport) -> String {
    let mut out = Vec::new();
    out.push(format!(
        "algebra over gf({}^{}), dim {}, basis {}",
        r.field.p,
        r.field.k,
        r.dim,
        r.names.join(", ")
    ));
    let f = &r.flags;
    out.push(format!(
        "flags: abelian={} perfect={} solvable={} nilpotent={} class={:?} derived_length={:?} supersolvable={} almost_abelian={}",
        f.abelian, f.perfect, f.solvable, f.nilpotent, f.nilpotency_class, f.derived_length,
        f.supersolvable, f.almost_abelian
    ));
    let chain = |name: &str, s: &SeriesDoc| {
        format!(
            "{name}: {}{}",
            s.terms.iter().map(|t| t.label.clone()).collect::<Vec<_>>().join(" > "),
            if s.stabilized { "" } else { " (not stabilized)" }
        )
    };
    out.push(chain("derived series", &r.derived_series));
    out.push(chain("lower central series", &r.lower_central_series));
    out.push(chain("upper central series", &r.upper_central_series));
    out.push(format!("center: {}", r.center.label));
    out.push(format!("nilradical: {}", r.nilradical.label));
    out.push(format!("solvable radical: {}", r.solvable_radical.label));
    out.push(format!("frattini: {}", r.frattini.label));
    out.push(format!("frattini (restricted): {}", r.frattini_p.label));
    out.push(format!("abelian p-socle: {}", r.abelian_p_socle.label));
    out.push(format!("p-th power subalgebra: {}", r.p_power_subalgebra.label));
    out.push(format!("maximal torus: {}", r.maximal_torus.label));
    match &r.roots {
        Some(roots) => {
            out.push(format!("cartan (torus centralizer): {}", roots.cartan.label));
            for rs in &roots.spaces {
                out.push(format!("root {}: {}", rs.weight_label, rs.space.label));
            }
        }
        None => out.push("roots: maximal torus is not split".to_string()),
    }
    out.join("\n") + "\n"
}

pub fn lattice_text(r: &LatticeReport) -> String {
    let mut out = Vec::new();
    out.push(format!(
        "{:?} lattice: {} nodes, {} atoms, {} maximal",
        r.mode, r.node_count, r.atom_count, r.maximal_count
    ));
    out.push(pred_line("modular", &r.predicates.modular));
    out.push(pred_line("upper_semimodular", &r.predicates.upper_semimodular));
    out.push(pred_line("lower_semimodular", &r.predicates.lower_semimodular));
    out.push(pred_line("atomistic", &r.predicates.atomistic));
    out.push(pred_line("dually_atomistic", &r.predicates.dually_atomistic));
    out.push(pred_line("all_quasi_ideal", &r.predicates.all_quasi_ideal));
    out.push(match (r.j_algebra.is_j, r.j_algebra.d) {
        (true, Some(d)) => format!("j_algebra: true (uniform chain length {d})"),
        (j, _) => format!("j_algebra: {j}"),
    });
    out.join("\n") + "\n"
}

pub fn verify_text(r: &VerifyReport) -> String {
    let mut out = Vec::new();
    for o in &r.outcomes {
        let verdict = match (o.applicable, o.holds) {
            (false, _) => "inapplicable".to_string(),
            (true, Some(true)) => "pass".to_string(),
            (true, Some(false)) => match o.mode {
                crate::harness::Mode::Assert => "FAIL".to_string(),
                crate::harness::Mode::Observe => "discrepancy".to_string(),
            },
            (true, None) => "unknown".to_string(),
        };
        let mode = match o.mode {
            crate::harness::Mode::Assert => "assert",
            crate::harness::Mode::Observe => "observe",
        };
        let w = o.witness.as_ref().map(|w| format!(" ({w})")).unwrap_or_default();
        out.push(format!("{} [{mode}]: {verdict}{w}", o.theorem));
    }
    for s in &r.skipped {
        out.push(format!("{}: skipped ({})", s.theorem, s.reason));
    }
    out.push(format!("assert failures: {}", r.assert_failures));
    out.join("\n") + "\n"
}

pub fn validate_text(r: &ValidateReport) -> String {
    format!("{}\n", r.report)
}

pub fn jc_text(r: &JcReport) -> String {
    format!(
        "element: {}\nsemisimple part: {}\np-nilpotent part: {}\n",
        r.element.label, r.semisimple.label, r.p_nilpotent.label
    )
}
