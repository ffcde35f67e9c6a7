//! Structure theory: series, radicals, centralizers, cores, Frattini
//! objects, the subalgebra generated by p-th powers, element
//! classification, Jordan-Chevalley decompositions, tori, root-space
//! decompositions, supersolvability, and almost-abelian recognition.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::algebra::RestrictedLieAlgebra;
use crate::error::Error;
use crate::field::Scalar;
use crate::lattice::{LatticeMode, SubalgebraLattice};
use crate::linalg::{Mat, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    Derived,
    LowerCentral,
    UpperCentral,
}

impl std::str::FromStr for SeriesKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "derived" => Ok(SeriesKind::Derived),
            "lower_central" => Ok(SeriesKind::LowerCentral),
            "upper_central" => Ok(SeriesKind::UpperCentral),
            other => Err(Error::Parse(format!("unknown series kind: {other}"))),
        }
    }
}

/// Terms of a characteristic series, retained up to the first repetition.
#[derive(Clone, Debug)]
pub struct SeriesResult {
    pub kind: SeriesKind,
    pub terms: Vec<Subspace>,
    pub stabilized: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Solvability {
    pub solvable: bool,
    pub nilpotent: bool,
    pub class: Option<usize>,
    pub derived_length: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Radicals {
    pub nilradical: Subspace,
    pub solvable_radical: Subspace,
}

#[derive(Clone, Debug)]
pub struct Frattini {
    /// Intersection of the maximal restricted subalgebras.
    pub f_p: Subspace,
    /// Largest restricted ideal inside `f_p`.
    pub phi_p: Subspace,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ElementClass {
    pub semisimple: bool,
    pub p_nilpotent: bool,
    /// Smallest n with the n-th iterated p-power zero; 0 when not p-nilpotent.
    pub order: usize,
    pub toral: bool,
}

#[derive(Clone, Debug)]
pub struct RootDecomposition {
    pub torus: Subspace,
    /// H = C_L(T), the zero-weight space.
    pub cartan: Subspace,
    /// Root value tuples on the toral basis (prime-field codes) to root spaces.
    pub roots: BTreeMap<Vec<Scalar>, Subspace>,
}

#[derive(Clone, Debug)]
pub struct Supersolvability {
    pub supersolvable: bool,
    /// Complete flag of ideals, dimensions 1..=dim, when one exists.
    pub ideal_flag: Option<Vec<Subspace>>,
    /// Complete flag of restricted ideals, when one exists.
    pub restricted_ideal_flag: Option<Vec<Subspace>>,
}

#[derive(Clone, Debug)]
pub struct AlmostAbelian {
    pub is_almost_abelian: bool,
    /// A toral element acting as the identity on the derived algebra, and
    /// the derived algebra itself.
    pub witness: Option<(Vec<Scalar>, Subspace)>,
}

/// Span of all brackets [a, b] with a from `s`, b from `t` (basis pairs).
pub fn bracket_span(l: &RestrictedLieAlgebra, s: &Subspace, t: &Subspace) -> Subspace {
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for a in s.basis_rows() {
        for b in t.basis_rows() {
            rows.push(l.bracket_vec(a, b));
        }
    }
    Subspace::from_vectors(l.field(), l.dim(), &rows)
}

/// The derived space [S, S] of a subspace.
pub fn derived_span(l: &RestrictedLieAlgebra, s: &Subspace) -> Subspace {
    bracket_span(l, s, s)
}

pub fn is_abelian_subspace(l: &RestrictedLieAlgebra, s: &Subspace) -> bool {
    derived_span(l, s).is_zero()
}

/// Does L equal its own derived algebra?
pub fn is_perfect(l: &RestrictedLieAlgebra) -> bool {
    let full = Subspace::full(l.field(), l.dim());
    derived_span(l, &full) == full
}

fn descending_series<F>(start: Subspace, step: F, cap: usize) -> (Vec<Subspace>, bool)
where
    F: Fn(&Subspace) -> Subspace,
{
    let mut terms = vec![start];
    let mut stabilized = false;
    for _ in 0..cap {
        let next = step(terms.last().unwrap());
        if &next == terms.last().unwrap() {
            stabilized = true;
            break;
        }
        terms.push(next);
    }
    (terms, stabilized)
}

pub fn series(l: &RestrictedLieAlgebra, kind: SeriesKind) -> SeriesResult {
    let n = l.dim();
    let full = Subspace::full(l.field(), n);
    let cap = n + 1;
    let (terms, stabilized) = match kind {
        SeriesKind::Derived => descending_series(full, |t| derived_span(l, t), cap),
        SeriesKind::LowerCentral => {
            descending_series(full.clone(), |t| bracket_span(l, t, &full), cap)
        }
        SeriesKind::UpperCentral => {
            descending_series(Subspace::zero(l.field(), n), |t| central_preimage(l, t), cap)
        }
    };
    SeriesResult { kind, terms, stabilized }
}

/// {x : [x, L] is contained in c}, one step of the ascending central series.
fn central_preimage(l: &RestrictedLieAlgebra, c: &Subspace) -> Subspace {
    let n = l.dim();
    let ann = c.annihilator();
    if ann.rows() == 0 {
        return Subspace::full(l.field(), n);
    }
    let mut sys = Mat::zero(l.field().clone(), 0, n);
    for j in 0..n {
        let ad_j = l.ad_matrix_vec(&unit_vec(n, j));
        sys = sys.vstack(&ann.mul(&ad_j));
    }
    Subspace::from_vectors(l.field(), n, &kernel_rows(&sys))
}

fn unit_vec(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn kernel_rows(m: &Mat) -> Vec<Vec<Scalar>> {
    let k = m.kernel();
    (0..k.rows()).map(|r| k.row(r).to_vec()).collect()
}

pub fn solvability(l: &RestrictedLieAlgebra) -> Solvability {
    let der = series(l, SeriesKind::Derived);
    let solvable = der.terms.last().unwrap().is_zero();
    let low = series(l, SeriesKind::LowerCentral);
    let nilpotent = low.terms.last().unwrap().is_zero();
    Solvability {
        solvable,
        nilpotent,
        class: nilpotent.then(|| low.terms.len() - 1),
        derived_length: solvable.then(|| der.terms.len() - 1),
    }
}

/// Is the subalgebra spanned by `s` solvable (as an algebra in its own right)?
pub fn subspace_is_solvable(l: &RestrictedLieAlgebra, s: &Subspace) -> bool {
    let (terms, _) = descending_series(s.clone(), |t| derived_span(l, t), s.dim() + 1);
    terms.last().unwrap().is_zero()
}

/// Is the subalgebra spanned by `s` nilpotent?
pub fn subspace_is_nilpotent(l: &RestrictedLieAlgebra, s: &Subspace) -> bool {
    let (terms, _) = descending_series(s.clone(), |t| bracket_span(l, t, s), s.dim() + 1);
    terms.last().unwrap().is_zero()
}

/// Elements of `within` (default L) commuting with every element of `s`.
pub fn centralizer(
    l: &RestrictedLieAlgebra,
    s: &Subspace,
    within: Option<&Subspace>,
) -> Subspace {
    let n = l.dim();
    let mut sys = Mat::zero(l.field().clone(), 0, n);
    for row in s.basis_rows() {
        sys = sys.vstack(&l.ad_matrix_vec(row));
    }
    let c = Subspace::from_vectors(l.field(), n, &kernel_rows(&sys));
    match within {
        Some(w) => c.intersect(w),
        None => c,
    }
}

pub fn center(l: &RestrictedLieAlgebra) -> Subspace {
    centralizer(l, &Subspace::full(l.field(), l.dim()), None)
}

/// Largest ideal of L contained in the subalgebra `s`, by the fixpoint
/// S_{i+1} = {x in S_i : [x, L] inside S_i}.
pub fn core(l: &RestrictedLieAlgebra, s: &Subspace) -> Result<Subspace, Error> {
    if !l.classify_subspace(s)?.subalgebra {
        return Err(Error::NotASubalgebra);
    }
    let n = l.dim();
    let ads: Vec<Mat> = (0..n).map(|j| l.ad_matrix_vec(&unit_vec(n, j))).collect();
    let mut cur = s.clone();
    loop {
        let ann = cur.annihilator();
        if ann.rows() == 0 {
            return Ok(cur);
        }
        let bt = cur.basis().transpose();
        let mut sys = Mat::zero(l.field().clone(), 0, cur.dim());
        for ad_j in &ads {
            sys = sys.vstack(&ann.mul(ad_j).mul(&bt));
        }
        let coeffs = sys.kernel();
        let next_rows: Vec<Vec<Scalar>> = {
            let m = coeffs.mul(cur.basis());
            (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
        };
        let next = Subspace::from_vectors(l.field(), n, &next_rows);
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
}

/// Nilradical and solvable radical, as sums of the nilpotent respectively
/// solvable ordinary ideals (sums of such ideals stay nilpotent/solvable).
pub fn radicals(l: &RestrictedLieAlgebra, budget: u64) -> Result<Radicals, Error> {
    let lat = SubalgebraLattice::enumerate(l, LatticeMode::Ordinary, budget)?;
    Ok(radicals_in(l, &lat))
}

/// Radicals read off an already-built ordinary-mode lattice.
pub fn radicals_in(l: &RestrictedLieAlgebra, lat: &SubalgebraLattice) -> Radicals {
    debug_assert_eq!(lat.mode(), LatticeMode::Ordinary);
    let mut nil = Subspace::zero(l.field(), l.dim());
    let mut sol = Subspace::zero(l.field(), l.dim());
    for i in 0..lat.node_count() {
        if !lat.is_ideal(i) {
            continue;
        }
        let node = lat.node(i);
        if subspace_is_nilpotent(l, node) {
            nil = nil.sum(node);
        }
        if subspace_is_solvable(l, node) {
            sol = sol.sum(node);
        }
    }
    Radicals { nilradical: nil, solvable_radical: sol }
}

/// Frattini p-subalgebra F_p (meet of the maximal restricted subalgebras;
/// L itself when there are none) and Frattini p-ideal phi_p = core(F_p).
pub fn frattini(l: &RestrictedLieAlgebra, budget: u64) -> Result<Frattini, Error> {
    let lat = SubalgebraLattice::enumerate(l, LatticeMode::Restricted, budget)?;
    frattini_in(l, &lat)
}

pub fn frattini_in(
    l: &RestrictedLieAlgebra,
    lat: &SubalgebraLattice,
) -> Result<Frattini, Error> {
    let mut f_p = Subspace::full(l.field(), l.dim());
    for m in lat.maximal_nodes() {
        f_p = f_p.intersect(lat.node(m));
    }
    let phi_p = core(l, &f_p)?;
    Ok(Frattini { f_p, phi_p })
}

/// Sum of the minimal abelian restricted ideals.
pub fn abelian_p_socle(l: &RestrictedLieAlgebra, budget: u64) -> Result<Subspace, Error> {
    let lat = SubalgebraLattice::enumerate(l, LatticeMode::Restricted, budget)?;
    Ok(abelian_p_socle_in(l, &lat))
}

pub fn abelian_p_socle_in(l: &RestrictedLieAlgebra, lat: &SubalgebraLattice) -> Subspace {
    let rids: Vec<usize> = (0..lat.node_count())
        .filter(|&i| lat.is_restricted_ideal(i) && lat.node(i).dim() > 0)
        .collect();
    let mut socle = Subspace::zero(l.field(), l.dim());
    for &i in &rids {
        let minimal = rids.iter().all(|&j| j == i || !lat.leq(j, i));
        if minimal && is_abelian_subspace(l, lat.node(i)) {
            socle = socle.sum(lat.node(i));
        }
    }
    socle
}

/// Restricted subalgebra generated by the p-th powers of all elements,
/// by exhaustive element enumeration.
pub fn lp_subalgebra(l: &RestrictedLieAlgebra, budget: u64) -> Result<Subspace, Error> {
    let count = l.element_count();
    if count > budget as u128 {
        return Err(Error::ResourceLimit {
            needed: count.min(u64::MAX as u128) as u64,
            budget,
        });
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for v in l.coordinate_vectors() {
        let pp = l.p_power_vec(&v);
        if pp.iter().any(|&c| c != 0) {
            rows.push(pp);
        }
    }
    Ok(l.restricted_closure(&rows))
}

pub fn element_class(l: &RestrictedLieAlgebra, x: &[Scalar]) -> ElementClass {
    let pp = l.p_power_vec(x);
    let toral = pp == x;
    let semisimple = l.restricted_closure(&[pp.clone()]).contains_vec(x);
    if x.iter().all(|&c| c == 0) {
        return ElementClass { semisimple: true, p_nilpotent: true, order: 0, toral };
    }
    // The kernel chain of the p-map stabilizes within dim of the cyclic
    // restricted subalgebra, so that many iterations decide p-nilpotency.
    let cap = l.restricted_closure(&[x.to_vec()]).dim();
    let mut v = x.to_vec();
    let mut p_nilpotent = false;
    let mut order = 0;
    for i in 1..=cap {
        v = l.p_power_vec(&v);
        if v.iter().all(|&c| c == 0) {
            p_nilpotent = true;
            order = i;
            break;
        }
    }
    ElementClass { semisimple, p_nilpotent, order, toral }
}

/// Jordan-Chevalley decomposition x = x_s + x_n inside the cyclic restricted
/// subalgebra C = <x>_p: x_s semisimple, x_n p-nilpotent, [x_s, x_n] = 0.
///
/// C is abelian (ad of an iterated p-power of x is a power of ad x), so the
/// p-map is additive and p-semilinear on C; x_s and x_n are the projections
/// of x onto the stable image and stable kernel of that operator.
pub fn jordan_chevalley(
    l: &RestrictedLieAlgebra,
    x: &[Scalar],
) -> (crate::algebra::Element, crate::algebra::Element) {
    let f = l.field().clone();
    let cyc = l.restricted_closure(&[x.to_vec()]);
    debug_assert!(is_abelian_subspace(l, &cyc));
    let d = cyc.dim();
    if d == 0 {
        return (l.zero_element(), l.zero_element());
    }
    // Matrix of the p-map on C: row i holds the C-coordinates of b_i^[p].
    let m_rows: Vec<Vec<Scalar>> = cyc
        .basis_rows()
        .map(|b| cyc.coords_of(&l.p_power_vec(b)).expect("p-power stays in the closure"))
        .collect();
    let m = Mat::from_rows(f.clone(), d, &m_rows);
    let mt = m.transpose();

    // Stable image: W -> span{ frob(w) * M : w basis of W }.
    let mut image = Subspace::full(&f, d);
    loop {
        let rows: Vec<Vec<Scalar>> = image
            .basis_rows()
            .map(|w| {
                let fw: Vec<Scalar> = w.iter().map(|&c| f.frobenius(c)).collect();
                mt.apply(&fw)
            })
            .collect();
        let next = Subspace::from_vectors(&f, d, &rows);
        if next == image {
            break;
        }
        image = next;
    }
    // Stable kernel: W -> {v : frob(v) * M lies in W}.
    let mut kernel = Subspace::zero(&f, d);
    loop {
        let ann = kernel.annihilator();
        let pre = ann.mul(&mt).kernel();
        let rows: Vec<Vec<Scalar>> = (0..pre.rows())
            .map(|r| pre.row(r).iter().map(|&c| f.frobenius_inv(c)).collect())
            .collect();
        let next = Subspace::from_vectors(&f, d, &rows);
        if next == kernel {
            break;
        }
        kernel = next;
    }

    // Fitting: C = image + kernel (direct); split x accordingly.
    let xc = cyc.coords_of(x).expect("x lies in its own closure");
    let gen_rows: Vec<Vec<Scalar>> = image
        .basis_rows()
        .chain(kernel.basis_rows())
        .map(|r| r.to_vec())
        .collect();
    debug_assert_eq!(gen_rows.len(), d);
    let g = Mat::from_rows(f.clone(), d, &gen_rows);
    let coeffs = g.transpose().solve(&xc).expect("Fitting parts span the closure");
    let mut s_c = vec![0; d];
    for (i, row) in image.basis_rows().enumerate() {
        for (k, &rv) in row.iter().enumerate() {
            s_c[k] = f.add(s_c[k], f.mul(coeffs[i], rv));
        }
    }
    let bt = cyc.basis().transpose();
    let xs = bt.apply(&s_c);
    let xn: Vec<Scalar> = x.iter().zip(&xs).map(|(&a, &b)| f.sub(a, b)).collect();
    (l.element_from_coords(xs), l.element_from_coords(xn))
}

/// Abelian restricted subalgebra all of whose elements are semisimple.
/// Over a perfect field a basis check suffices once the span is abelian.
pub fn is_torus(l: &RestrictedLieAlgebra, s: &Subspace) -> bool {
    match l.classify_subspace(s) {
        Ok(fl) if fl.restricted_subalgebra => {}
        _ => return false,
    }
    if !is_abelian_subspace(l, s) {
        return false;
    }
    s.basis_rows().all(|r| element_class(l, r).semisimple)
}

/// A torus of maximal dimension among all restricted subalgebras, found by
/// filtering the lattice; ties broken by canonical node order.
pub fn maximal_torus(l: &RestrictedLieAlgebra, budget: u64) -> Result<Subspace, Error> {
    let lat = SubalgebraLattice::enumerate(l, LatticeMode::Restricted, budget)?;
    Ok(maximal_torus_in(l, &lat))
}

pub fn maximal_torus_in(l: &RestrictedLieAlgebra, lat: &SubalgebraLattice) -> Subspace {
    let mut best = Subspace::zero(l.field(), l.dim());
    for i in 0..lat.node_count() {
        let node = lat.node(i);
        if node.dim() > best.dim() && is_torus(l, node) {
            best = node.clone();
        }
    }
    best
}

/// Simultaneous eigenspace decomposition for a split torus T: H = C_L(T)
/// plus root spaces indexed by prime-field value tuples on a toral basis.
/// Fails with NotATorus when T is not a torus or has no basis of toral
/// elements (non-split case).
pub fn root_decomposition(
    l: &RestrictedLieAlgebra,
    t: &Subspace,
) -> Result<RootDecomposition, Error> {
    let f = l.field().clone();
    let n = l.dim();
    if !is_torus(l, t) {
        return Err(Error::NotATorus);
    }
    // Toral basis: greedily collect toral elements until they span T.
    let mut tbasis: Vec<Vec<Scalar>> = Vec::new();
    let mut span = Subspace::zero(&f, n);
    for v in t.elements() {
        if v.iter().all(|&c| c == 0) || span.contains_vec(&v) {
            continue;
        }
        if l.p_power_vec(&v) == v {
            span = span.sum(&Subspace::from_vectors(&f, n, &[v.clone()]));
            tbasis.push(v);
        }
    }
    if span.dim() != t.dim() {
        return Err(Error::NotATorus);
    }
    let r = tbasis.len();
    let ads: Vec<Mat> = tbasis.iter().map(|v| l.ad_matrix_vec(v)).collect();
    let p = f.p() as usize;

    let mut cartan = Subspace::full(&f, n);
    let mut roots = BTreeMap::new();
    let mut alpha = vec![0usize; r];
    let mut covered = 0usize;
    loop {
        let mut sys = Mat::zero(f.clone(), 0, n);
        for (i, ad) in ads.iter().enumerate() {
            let mut shifted = ad.clone();
            let a = f.from_int(alpha[i] as i64);
            for k in 0..n {
                shifted.set(k, k, f.sub(shifted.get(k, k), a));
            }
            sys = sys.vstack(&shifted);
        }
        let space = Subspace::from_vectors(&f, n, &kernel_rows(&sys));
        covered += space.dim();
        if alpha.iter().all(|&a| a == 0) {
            cartan = space;
        } else if !space.is_zero() {
            let key: Vec<Scalar> = alpha.iter().map(|&a| f.from_int(a as i64)).collect();
            roots.insert(key, space);
        }
        // Next tuple, last coordinate fastest.
        let mut i = r;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            alpha[i] += 1;
            if alpha[i] < p {
                break;
            }
            alpha[i] = 0;
        }
        if alpha.iter().all(|&a| a == 0) {
            break;
        }
    }
    debug_assert_eq!(covered, n, "toral ad maps are simultaneously diagonalizable");
    Ok(RootDecomposition { torus: t.clone(), cartan, roots })
}

/// Searches for complete flags of (restricted) ideals by backtracking over
/// one-dimensional steps; a greedy first choice can dead-end even when a
/// flag exists.
pub fn supersolvability(l: &RestrictedLieAlgebra) -> Supersolvability {
    let ideal_flag = find_flag(l, false);
    let restricted_ideal_flag = find_flag(l, true);
    Supersolvability {
        supersolvable: ideal_flag.is_some(),
        ideal_flag,
        restricted_ideal_flag,
    }
}

fn find_flag(l: &RestrictedLieAlgebra, restricted: bool) -> Option<Vec<Subspace>> {
    let mut flag = Vec::new();
    let start = Subspace::zero(l.field(), l.dim());
    if extend_flag(l, restricted, &start, &mut flag) {
        Some(flag)
    } else {
        None
    }
}

fn extend_flag(
    l: &RestrictedLieAlgebra,
    restricted: bool,
    cur: &Subspace,
    flag: &mut Vec<Subspace>,
) -> bool {
    let n = l.dim();
    if cur.dim() == n {
        return true;
    }
    let mut seen: HashSet<Vec<Scalar>> = HashSet::new();
    for v in l.coordinate_vectors() {
        if v.iter().all(|&c| c == 0) || cur.contains_vec(&v) {
            continue;
        }
        let mut rows: Vec<Vec<Scalar>> = cur.basis_rows().map(|r| r.to_vec()).collect();
        rows.push(v.clone());
        let cand = Subspace::from_vectors(l.field(), n, &rows);
        if !seen.insert(cand.canonical_key()) {
            continue;
        }
        // cur is already an ideal (and restricted when asked), so only the
        // new generator needs checking.
        let ok = (0..n).all(|j| cand.contains_vec(&l.bracket_vec(&unit_vec(n, j), &v)))
            && (!restricted || cand.contains_vec(&l.p_power_vec(&v)));
        if !ok {
            continue;
        }
        flag.push(cand.clone());
        if extend_flag(l, restricted, &cand, flag) {
            return true;
        }
        flag.pop();
    }
    false
}

/// Recognizes L = Fb + A with A = [L, L] abelian of codimension one, zero
/// p-map on A, and a toral b acting as the identity on A.
pub fn is_almost_abelian(l: &RestrictedLieAlgebra) -> AlmostAbelian {
    let none = AlmostAbelian { is_almost_abelian: false, witness: None };
    let f = l.field().clone();
    let n = l.dim();
    let d = derived_span(l, &Subspace::full(&f, n));
    if d.is_zero() || d.dim() != n - 1 || !is_abelian_subspace(l, &d) {
        return none;
    }
    if !d.basis_rows().all(|r| l.p_power_vec(r).iter().all(|&c| c == 0)) {
        return none;
    }
    // Solve [b, a_k] = a_k for all basis a_k of the derived algebra:
    // stacked as ad(a_k) b = -a_k.
    let mut sys = Mat::zero(f.clone(), 0, n);
    let mut rhs: Vec<Scalar> = Vec::new();
    for a in d.basis_rows() {
        sys = sys.vstack(&l.ad_matrix_vec(a));
        rhs.extend(a.iter().map(|&c| f.neg(c)));
    }
    let Some(b0) = sys.solve(&rhs) else {
        return none;
    };
    // Search the solution coset b0 + C_L(A) canonically for a toral element.
    let cent = Subspace::from_vectors(&f, n, &kernel_rows(&sys));
    for c in cent.elements() {
        let b: Vec<Scalar> = b0.iter().zip(&c).map(|(&x, &y)| f.add(x, y)).collect();
        if l.p_power_vec(&b) == b {
            return AlmostAbelian { is_almost_abelian: true, witness: Some((b, d)) };
        }
    }
    none
}

/// Restricted closure of the union of all one-dimensional restricted
/// subalgebras (lines Fx with x^[p] in Fx).
pub fn one_dim_generated(l: &RestrictedLieAlgebra, budget: u64) -> Result<Subspace, Error> {
    let count = l.element_count();
    if count > budget as u128 {
        return Err(Error::ResourceLimit {
            needed: count.min(u64::MAX as u128) as u64,
            budget,
        });
    }
    let f = l.field();
    let mut gens: Vec<Vec<Scalar>> = Vec::new();
    for v in l.coordinate_vectors() {
        if v.iter().all(|&c| c == 0) {
            continue;
        }
        let pp = l.p_power_vec(&v);
        // pp parallel to v?
        let lead = v.iter().position(|&c| c != 0).unwrap();
        let lambda = f.div(pp[lead], v[lead]);
        let parallel = v.iter().zip(&pp).all(|(&a, &b)| f.mul(lambda, a) == b);
        if parallel {
            gens.push(v);
        }
    }
    Ok(l.restricted_closure(&gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::field::FiniteField;
    use crate::DEFAULT_BUDGET;

    fn gf(p: u64) -> FiniteField {
        FiniteField::prime(p).unwrap()
    }

    fn span(f: &FiniteField, n: usize, rows: &[&[i64]]) -> Subspace {
        let vecs: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&c| f.from_int(c)).collect())
            .collect();
        Subspace::from_vectors(f, n, &vecs)
    }

    #[test]
    fn derived_series_shapes() {
        let f = gf(3);
        let ab = families::strongly_abelian(&f, 2);
        let s = series(&ab, SeriesKind::Derived);
        assert_eq!(s.terms.len(), 2);
        assert!(s.stabilized && s.terms[1].is_zero());

        let aa = families::almost_abelian(&f, 2).unwrap();
        let s = series(&aa, SeriesKind::Derived);
        let a_part = span(&f, 3, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(s.terms.len(), 3);
        assert_eq!(s.terms[1], a_part);
        assert!(s.terms[2].is_zero());

        let f5 = gf(5);
        let sl = families::sl2(&f5).unwrap();
        let s = series(&sl, SeriesKind::Derived);
        assert_eq!(s.terms.len(), 1);
        assert!(s.stabilized);
    }

    #[test]
    fn central_series_of_the_nilpotent_fixtures() {
        let f = gf(3);
        let h = families::heisenberg_null(&f);
        let s = series(&h, SeriesKind::LowerCentral);
        assert_eq!(s.terms.len(), 3);
        assert_eq!(s.terms[1], span(&f, 3, &[&[0, 0, 1]]));
        assert!(s.terms[2].is_zero());

        let u = families::usmn(&f);
        let s = series(&u, SeriesKind::UpperCentral);
        assert_eq!(s.terms.len(), 3);
        assert!(s.terms[0].is_zero());
        assert_eq!(s.terms[1], span(&f, 4, &[&[0, 1, 0, 0], &[0, 0, 0, 1]]));
        assert_eq!(s.terms[2].dim(), 4);
    }

    #[test]
    fn solvability_flags() {
        let f = gf(5);
        let sl = families::sl2(&f).unwrap();
        let sv = solvability(&sl);
        assert!(!sv.solvable && !sv.nilpotent);
        assert_eq!(sv.class, None);
        assert_eq!(sv.derived_length, None);

        let h = families::heisenberg_null(&gf(3));
        let sv = solvability(&h);
        assert!(sv.nilpotent && sv.solvable);
        assert_eq!(sv.class, Some(2));

        let aa = families::almost_abelian(&gf(3), 2).unwrap();
        let sv = solvability(&aa);
        assert!(sv.solvable && !sv.nilpotent);
        assert_eq!(sv.derived_length, Some(2));
    }

    #[test]
    fn centralizers_and_centers() {
        let f = gf(3);
        let h = families::heisenberg_null(&f);
        let full = Subspace::full(&f, 3);
        assert_eq!(centralizer(&h, &Subspace::zero(&f, 3), None), full);
        assert_eq!(
            centralizer(&h, &span(&f, 3, &[&[1, 0, 0]]), None),
            span(&f, 3, &[&[1, 0, 0], &[0, 0, 1]])
        );
        let u = families::usmn(&f);
        assert_eq!(center(&u), span(&f, 4, &[&[0, 1, 0, 0], &[0, 0, 0, 1]]));
    }

    #[test]
    fn cores_of_subalgebras() {
        let f = gf(5);
        let sl = families::sl2(&f).unwrap();
        let full = Subspace::full(&f, 3);
        assert_eq!(core(&sl, &full).unwrap(), full);
        let borel = span(&f, 3, &[&[1, 0, 0], &[0, 1, 0]]);
        assert!(core(&sl, &borel).unwrap().is_zero());
        let not_closed = span(&f, 3, &[&[1, 0, 0], &[0, 0, 1]]);
        assert!(matches!(core(&sl, &not_closed), Err(Error::NotASubalgebra)));

        let aa = families::almost_abelian(&gf(3), 2).unwrap();
        let a_part = span(&gf(3), 3, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(core(&aa, &a_part).unwrap(), a_part);
    }

    #[test]
    fn radicals_of_the_standard_fixtures() {
        let f5 = gf(5);
        let sl = families::sl2(&f5).unwrap();
        let r = radicals(&sl, DEFAULT_BUDGET).unwrap();
        assert!(r.nilradical.is_zero() && r.solvable_radical.is_zero());

        let f3 = gf(3);
        let aa = families::almost_abelian(&f3, 2).unwrap();
        let r = radicals(&aa, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.nilradical, span(&f3, 3, &[&[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(r.solvable_radical.dim(), 3);

        let h = families::heisenberg_null(&f3);
        let r = radicals(&h, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.nilradical.dim(), 3);
    }

    #[test]
    fn frattini_objects() {
        let f2 = gf(2);
        assert!(frattini(&families::strongly_abelian(&f2, 3), DEFAULT_BUDGET)
            .unwrap()
            .f_p
            .is_zero());
        assert!(frattini(&families::torus(&gf(3), 1), DEFAULT_BUDGET).unwrap().f_p.is_zero());

        let u = families::usmn(&f2);
        let fr = frattini(&u, DEFAULT_BUDGET).unwrap();
        let expected = span(&f2, 4, &[&[0, 1, 0, 0], &[0, 0, 0, 1]]);
        assert_eq!(fr.f_p, expected);
        assert_eq!(fr.phi_p, expected);
        let fl = u.classify_subspace(&fr.phi_p).unwrap();
        assert!(fl.restricted_ideal);
        // The quotient by phi_p is Frattini-free.
        let q = u.quotient(&fr.phi_p).unwrap();
        assert!(frattini(&q, DEFAULT_BUDGET).unwrap().phi_p.is_zero());
    }

    #[test]
    fn abelian_socles() {
        let f = gf(3);
        let ab = families::strongly_abelian(&f, 2);
        assert_eq!(abelian_p_socle(&ab, DEFAULT_BUDGET).unwrap().dim(), 2);
        let sl = families::sl2(&gf(5)).unwrap();
        assert!(abelian_p_socle(&sl, DEFAULT_BUDGET).unwrap().is_zero());
        let aa = families::almost_abelian(&f, 2).unwrap();
        assert_eq!(
            abelian_p_socle(&aa, DEFAULT_BUDGET).unwrap(),
            span(&f, 3, &[&[0, 1, 0], &[0, 0, 1]])
        );
        let u = families::usmn(&gf(2));
        assert_eq!(
            abelian_p_socle(&u, DEFAULT_BUDGET).unwrap(),
            span(&gf(2), 4, &[&[0, 1, 0, 0], &[0, 0, 0, 1]])
        );
    }

    #[test]
    fn p_power_generated_subalgebras() {
        let f2 = gf(2);
        let f3 = gf(3);
        assert!(lp_subalgebra(&families::strongly_abelian(&f3, 2), DEFAULT_BUDGET)
            .unwrap()
            .is_zero());
        assert_eq!(lp_subalgebra(&families::torus(&f3, 2), DEFAULT_BUDGET).unwrap().dim(), 2);
        assert_eq!(lp_subalgebra(&families::sl2(&f3).unwrap(), DEFAULT_BUDGET).unwrap().dim(), 3);
        // In characteristic 2 the cross terms contribute the center.
        assert_eq!(
            lp_subalgebra(&families::heisenberg_null(&f2), DEFAULT_BUDGET).unwrap(),
            span(&f2, 3, &[&[0, 0, 1]])
        );
        assert!(lp_subalgebra(&families::heisenberg_null(&f3), DEFAULT_BUDGET)
            .unwrap()
            .is_zero());
        assert_eq!(
            lp_subalgebra(&families::usmn(&f2), DEFAULT_BUDGET).unwrap(),
            span(&f2, 4, &[&[0, 1, 0, 0], &[0, 0, 0, 1]])
        );
        assert_eq!(
            lp_subalgebra(&families::usmn(&f3), DEFAULT_BUDGET).unwrap(),
            span(&f3, 4, &[&[0, 1, 0, 0]])
        );
        // Always contains the closure of the basis p-images.
        for alg in [families::usmn(&f2), families::heisenberg_null(&f2), families::usmn(&f3)] {
            let lp = lp_subalgebra(&alg, DEFAULT_BUDGET).unwrap();
            let rows: Vec<Vec<Scalar>> =
                (0..alg.dim()).map(|i| alg.p_power_vec(&unit_vec(alg.dim(), i))).collect();
            let base = alg.restricted_closure(&rows);
            assert!(lp.contains(&base));
        }
    }

    #[test]
    fn element_classification() {
        let f3 = gf(3);
        let t = families::torus(&f3, 1);
        let c = element_class(&t, &[1]);
        assert!(c.semisimple && c.toral && !c.p_nilpotent);

        let u = families::usmn(&f3);
        let c = element_class(&u, &[1, 0, 0, 0]);
        assert!(c.p_nilpotent && !c.semisimple && !c.toral);
        assert_eq!(c.order, 2);

        let zero = element_class(&u, &[0, 0, 0, 0]);
        assert!(zero.p_nilpotent && zero.semisimple && zero.toral);
        assert_eq!(zero.order, 0);

        // In sl2 over a finite field ad(v) has characteristic polynomial
        // x^3 - 4q(v) x with q(ae+bh+cf) = b^2 + ac, so v^[p] is a scalar
        // multiple of v (q != 0, semisimple) or zero (q = 0, p-nilpotent):
        // every element falls on one side of the dichotomy.
        let f5 = gf(5);
        let sl = families::sl2(&f5).unwrap();
        let c = element_class(&sl, &[1, 1, 0]);
        assert!(c.semisimple && c.toral && !c.p_nilpotent);
        for v in sl.coordinate_vectors() {
            let c = element_class(&sl, &v);
            assert!(c.semisimple || c.p_nilpotent);
            if v.iter().any(|&x| x != 0) {
                assert!(!(c.semisimple && c.p_nilpotent));
            }
        }

        // A mixed p-map on an abelian algebra produces elements that are
        // neither semisimple nor p-nilpotent.
        let mixed = families::abelian(
            &f3,
            2,
            families::AbelianPmap::Custom(vec![vec![1, 0], vec![0, 0]]),
        )
        .unwrap();
        let c = element_class(&mixed, &[1, 1]);
        assert!(!c.semisimple && !c.p_nilpotent && !c.toral);
        assert_eq!(c.order, 0);
    }

    #[test]
    fn jordan_chevalley_clauses_and_uniqueness() {
        let cases: Vec<RestrictedLieAlgebra> = vec![
            families::usmn(&gf(3)),
            families::sl2(&gf(5)).unwrap(),
            families::almost_abelian(&gf(2), 2).unwrap(),
            families::abelian(
                &gf(3),
                2,
                families::AbelianPmap::Custom(vec![vec![1, 0], vec![0, 0]]),
            )
            .unwrap(),
        ];
        for l in cases {
            let f = l.field().clone();
            for x in l.coordinate_vectors() {
                let (xs, xn) = jordan_chevalley(&l, &x);
                let s = xs.coords().to_vec();
                let nn = xn.coords().to_vec();
                let sum: Vec<Scalar> =
                    s.iter().zip(&nn).map(|(&a, &b)| f.add(a, b)).collect();
                assert_eq!(sum, x);
                assert!(l.bracket_vec(&s, &nn).iter().all(|&c| c == 0));
                assert!(element_class(&l, &s).semisimple);
                assert!(element_class(&l, &nn).p_nilpotent);
                let cyc = l.restricted_closure(&[x.clone()]);
                assert!(cyc.contains_vec(&s) && cyc.contains_vec(&nn));
                // Uniqueness by brute force over the cyclic subalgebra.
                let mut hits = 0;
                for cand in cyc.elements() {
                    let rest: Vec<Scalar> =
                        x.iter().zip(&cand).map(|(&a, &b)| f.sub(a, b)).collect();
                    if element_class(&l, &cand).semisimple
                        && element_class(&l, &rest).p_nilpotent
                        && l.bracket_vec(&cand, &rest).iter().all(|&c| c == 0)
                        && cyc.contains_vec(&rest)
                    {
                        assert_eq!(cand, s);
                        assert_eq!(rest, nn);
                        hits += 1;
                    }
                }
                assert_eq!(hits, 1);
            }
        }
    }

    #[test]
    fn maximal_tori() {
        let f3 = gf(3);
        assert_eq!(maximal_torus(&families::torus(&f3, 2), DEFAULT_BUDGET).unwrap().dim(), 2);
        assert!(maximal_torus(&families::strongly_abelian(&f3, 2), DEFAULT_BUDGET)
            .unwrap()
            .is_zero());
        let f5 = gf(5);
        let sl = families::sl2(&f5).unwrap();
        let t = maximal_torus(&sl, DEFAULT_BUDGET).unwrap();
        assert_eq!(t, span(&f5, 3, &[&[0, 1, 0]]));
    }

    #[test]
    fn root_decomposition_of_sl2() {
        let f = gf(5);
        let sl = families::sl2(&f).unwrap();
        let t = span(&f, 3, &[&[0, 1, 0]]);
        let rd = root_decomposition(&sl, &t).unwrap();
        assert_eq!(rd.cartan, t);
        assert_eq!(rd.cartan, centralizer(&sl, &t, None));
        let e_space = span(&f, 3, &[&[1, 0, 0]]);
        let f_space = span(&f, 3, &[&[0, 0, 1]]);
        assert_eq!(rd.roots.get(&vec![2]), Some(&e_space));
        assert_eq!(rd.roots.get(&vec![3]), Some(&f_space));
        assert_eq!(rd.roots.len(), 2);
        let total: usize = rd.cartan.dim() + rd.roots.values().map(|s| s.dim()).sum::<usize>();
        assert_eq!(total, 3);
        // [L_a, L_b] lands in L_{a+b}: here [L_2, L_3] inside the Cartan.
        let eb: Vec<Scalar> = vec![1, 0, 0];
        let fb: Vec<Scalar> = vec![0, 0, 1];
        assert!(rd.cartan.contains_vec(&sl.bracket_vec(&eb, &fb)));
    }

    #[test]
    fn root_decomposition_edge_cases() {
        let f = gf(3);
        let aa = families::almost_abelian(&f, 2).unwrap();
        let t = span(&f, 3, &[&[1, 0, 0]]);
        let rd = root_decomposition(&aa, &t).unwrap();
        assert_eq!(rd.cartan, t);
        assert_eq!(rd.roots.len(), 1);
        assert_eq!(rd.roots.get(&vec![1]), Some(&span(&f, 3, &[&[0, 1, 0], &[0, 0, 1]])));

        let zero_t = Subspace::zero(&f, 3);
        let rd = root_decomposition(&aa, &zero_t).unwrap();
        assert_eq!(rd.cartan.dim(), 3);
        assert!(rd.roots.is_empty());

        // Non-split torus: restricted and semisimple, but no toral basis.
        let f5 = gf(5);
        let sl = families::sl2(&f5).unwrap();
        let nonsplit = span(&f5, 3, &[&[2, 0, 1]]);
        assert!(matches!(root_decomposition(&sl, &nonsplit), Err(Error::NotATorus)));
    }

    fn assert_valid_flag(
        l: &RestrictedLieAlgebra,
        flag: &[Subspace],
        restricted: bool,
    ) {
        assert_eq!(flag.len(), l.dim());
        for (j, v) in flag.iter().enumerate() {
            assert_eq!(v.dim(), j + 1);
            if j > 0 {
                assert!(v.contains(&flag[j - 1]));
            }
            let fl = l.classify_subspace(v).unwrap();
            assert!(fl.ideal);
            if restricted {
                assert!(fl.restricted_ideal);
            }
        }
    }

    #[test]
    fn supersolvability_verdicts() {
        let f3 = gf(3);
        let ab = families::strongly_abelian(&f3, 2);
        let s = supersolvability(&ab);
        assert!(s.supersolvable);
        assert_valid_flag(&ab, s.ideal_flag.as_ref().unwrap(), false);
        assert_valid_flag(&ab, s.restricted_ideal_flag.as_ref().unwrap(), true);

        let h = families::heisenberg_null(&f3);
        let s = supersolvability(&h);
        assert!(s.supersolvable);
        assert_valid_flag(&h, s.ideal_flag.as_ref().unwrap(), false);

        let t2 = families::torus(&gf(2), 2);
        let s = supersolvability(&t2);
        assert!(s.supersolvable);
        assert_valid_flag(&t2, s.restricted_ideal_flag.as_ref().unwrap(), true);

        let sl = families::sl2(&gf(5)).unwrap();
        let s = supersolvability(&sl);
        assert!(!s.supersolvable && s.ideal_flag.is_none() && s.restricted_ideal_flag.is_none());
    }

    #[test]
    fn supersolvable_maximal_subalgebras_have_codimension_one() {
        let f = gf(3);
        let h = families::heisenberg_null(&f);
        let lat = SubalgebraLattice::enumerate(&h, LatticeMode::Ordinary, DEFAULT_BUDGET).unwrap();
        for m in lat.maximal_nodes() {
            assert_eq!(lat.node(m).dim(), 2);
        }
    }

    #[test]
    fn almost_abelian_recognition() {
        let f5 = gf(5);
        let aa = families::almost_abelian(&f5, 3).unwrap();
        let r = is_almost_abelian(&aa);
        assert!(r.is_almost_abelian);
        let (b, a) = r.witness.unwrap();
        assert_eq!(b, vec![1, 0, 0, 0]);
        assert_eq!(a.dim(), 3);
        for row in a.basis_rows() {
            assert_eq!(aa.bracket_vec(&b, row), row.to_vec());
        }

        assert!(!is_almost_abelian(&families::strongly_abelian(&f5, 2)).is_almost_abelian);
        assert!(!is_almost_abelian(&families::heisenberg_null(&gf(3))).is_almost_abelian);
        assert!(!is_almost_abelian(&families::sl2(&f5).unwrap()).is_almost_abelian);
    }

    #[test]
    fn one_dim_generated_subalgebras() {
        let f3 = gf(3);
        assert_eq!(one_dim_generated(&families::torus(&f3, 2), DEFAULT_BUDGET).unwrap().dim(), 2);
        for p in [2u64, 3] {
            let f = gf(p);
            let u = families::usmn(&f);
            assert_eq!(
                one_dim_generated(&u, DEFAULT_BUDGET).unwrap(),
                span(&f, 4, &[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]])
            );
        }
        let f5 = gf(5);
        assert_eq!(
            one_dim_generated(&families::sl2(&f5).unwrap(), DEFAULT_BUDGET).unwrap().dim(),
            3
        );
    }

    #[test]
    fn cores_of_all_lattice_nodes_are_restricted_ideals() {
        let f = gf(2);
        let u = families::usmn(&f);
        let lat = SubalgebraLattice::enumerate(&u, LatticeMode::Restricted, DEFAULT_BUDGET).unwrap();
        for i in 0..lat.node_count() {
            let c = core(&u, lat.node(i)).unwrap();
            let fl = u.classify_subspace(&c).unwrap();
            assert!(fl.restricted_ideal);
            assert!(lat.node(i).contains(&c));
        }
    }
}
