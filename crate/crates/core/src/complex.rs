//! Degree slices of the complexes `L•(ω)`, `C•(ω)`, `K•(ω)` and the
//! comparison maps `φ`.
//!
//! Position `s` of `L•` and `C•` in slice `a` is `Ω^{2s-1}(a + (s-1)e)`,
//! with `T_S(a - e)` at `s = 0`. The differentials are `X ↦ i_X dω` followed
//! by `dω∧` for `L•`, and `ω△` throughout for `C•`. For the Koszul complex,
//! `H^s(K•(ω, a))` is the homology at `Ω^s(a)` between
//! `ω∧: Ω^{s-1}(a-e) → Ω^s(a)` and `ω∧: Ω^s(a) → Ω^{s+1}(a+e)`.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::foliation::Foliation;
use crate::form::{kappa, Form, FormDegree};
use crate::linalg::{index_tuples, ExactMatrix, Operator, SliceBasis, SparseVec, Subspace};
use crate::poly::{monomial_basis, Monomial, Poly};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComplexKind {
    L,
    C,
    K,
}

impl fmt::Display for ComplexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ComplexKind::L => "L",
            ComplexKind::C => "C",
            ComplexKind::K => "K",
        };
        write!(f, "{s}")
    }
}

/// The linear maps the engine materializes, keyed with their source slice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapKind {
    /// `τ ↦ ω ∧ τ`.
    WedgeOmega,
    /// `τ ↦ dω ∧ τ`.
    WedgeDOmega,
    /// `τ ↦ ω △ τ`; on vector fields `X ↦ L_X ω`.
    Triangle,
    /// `X ↦ i_X dω`.
    ContractDOmega,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct MapKey {
    kind: MapKind,
    r: i32,
    p: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct HomologyDims {
    pub cycles: usize,
    pub boundaries: usize,
    pub homology: usize,
}

/// `(r, s, p, a, e)` with `s = κ(r)` and `p = e(s - 1) + a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdmissibleIndices {
    pub r: i32,
    pub s: i64,
    pub p: i64,
    pub a: i64,
    pub e: i64,
}

impl AdmissibleIndices {
    pub fn new(r: i32, a: i64, e: i64) -> Result<Self> {
        if r < -1 || r % 2 == 0 {
            return Err(Error::usage(format!("form degree {r} is not odd")));
        }
        let s = (r as i64 + 1) / 2;
        Ok(AdmissibleIndices {
            r,
            s,
            p: e * (s - 1) + a,
            a,
            e,
        })
    }

    /// Indices for position `s` of slice `a`.
    pub fn at_position(s: i64, a: i64, e: i64) -> Self {
        AdmissibleIndices::new((2 * s - 1) as i32, a, e).expect("odd degree")
    }

    pub fn is_admissible(&self) -> bool {
        self.r >= -1
            && self.r % 2 != 0
            && self.s == (self.r as i64 + 1) / 2
            && self.p == self.e * (self.s - 1) + self.a
    }
}

/// `φ(τ) = (eκ(r) - p) τ_r + eκ(r) τ_d`; the identity on vector fields.
pub fn phi(tau: &Form, idx: &AdmissibleIndices) -> Result<Form> {
    if !idx.is_admissible() {
        return Err(Error::usage(format!("indices {idx:?} are not admissible")));
    }
    if tau.r() != idx.r {
        return Err(Error::usage(format!(
            "phi at degree {} applied to a form of degree {}",
            idx.r,
            tau.r()
        )));
    }
    if idx.s == 0 {
        return Ok(tau.clone());
    }
    if idx.a == idx.e {
        return Err(Error::SingularIndex(idx.e));
    }
    match tau.homogeneous_degree() {
        FormDegree::AnyDegree => return Ok(tau.clone()),
        FormDegree::Degree(q) if q == idx.p => {}
        other => {
            return Err(Error::usage(format!(
                "phi expects homogeneity {}, got {other:?}",
                idx.p
            )))
        }
    }
    let ek = &Scalar::from_int(idx.e) * &kappa(idx.r);
    let split = tau.cartan_split(idx.p)?;
    split
        .tau_r
        .scale(&(&ek - &Scalar::from_int(idx.p)))
        .checked_add(&split.tau_d.scale(&ek))
}

/// Homology of `C•` and `L•` side by side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClComparison {
    /// `a = e`, where `φ` is singular.
    Excluded { a: i64, s: i64 },
    Compared {
        a: i64,
        s: i64,
        c: HomologyDims,
        l: HomologyDims,
    },
}

impl ClComparison {
    pub fn agrees(&self) -> bool {
        match self {
            ClComparison::Excluded { .. } => true,
            ClComparison::Compared { c, l, .. } => c == l,
        }
    }

    pub fn ensure_agrees(&self) -> Result<()> {
        match self {
            ClComparison::Compared { a, s, c, l } if c != l => Err(Error::falsification(format!(
                "H^{s}(C, {a}) = {c:?} but H^{s}(L, {a}) = {l:?}"
            ))),
            _ => Ok(()),
        }
    }
}

/// Outcome of mapping `C•` cycles and boundaries through `φ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhiCheck {
    pub a: i64,
    pub s: i64,
    pub cycles_c: usize,
    pub cycles_l: usize,
    pub boundaries_c: usize,
    pub boundaries_l: usize,
    /// Every mapped cycle lies in the `L•` cycles.
    pub cycles_mapped: bool,
    /// Every mapped boundary lies in the `L•` boundaries.
    pub boundaries_mapped: bool,
}

/// Memoized slice computations for one foliation. Safe to share between
/// threads; concurrent misses may compute a value twice but always store
/// the same result.
pub struct Engine {
    fol: Foliation,
    bases: Mutex<HashMap<(i32, i64), Arc<SliceBasis>>>,
    matrices: Mutex<HashMap<MapKey, Arc<ExactMatrix>>>,
    images: Mutex<HashMap<MapKey, Arc<Subspace>>>,
    kernels: Mutex<HashMap<MapKey, Arc<Subspace>>>,
    ranks: Mutex<HashMap<MapKey, Arc<usize>>>,
    pub(crate) unfolding: Mutex<HashMap<i64, Arc<ExactMatrix>>>,
}

pub(crate) fn memo<K, V, F>(cache: &Mutex<HashMap<K, Arc<V>>>, key: K, make: F) -> Result<Arc<V>>
where
    K: Eq + Hash,
    F: FnOnce() -> Result<V>,
{
    if let Some(v) = cache.lock().expect("cache lock").get(&key) {
        return Ok(v.clone());
    }
    let v = Arc::new(make()?);
    Ok(cache
        .lock()
        .expect("cache lock")
        .entry(key)
        .or_insert(v)
        .clone())
}

impl Engine {
    pub fn new(fol: Foliation) -> Self {
        Engine {
            fol,
            bases: Mutex::default(),
            matrices: Mutex::default(),
            images: Mutex::default(),
            kernels: Mutex::default(),
            ranks: Mutex::default(),
            unfolding: Mutex::default(),
        }
    }

    pub fn foliation(&self) -> &Foliation {
        &self.fol
    }

    pub fn e(&self) -> i64 {
        self.fol.e()
    }

    pub fn nvars(&self) -> usize {
        self.fol.nvars()
    }

    /// Basis of `Ωʳ(p)` (or `T(p)` for `r = -1`).
    pub fn basis(&self, r: i32, p: i64) -> Arc<SliceBasis> {
        memo(&self.bases, (r, p), || {
            Ok(SliceBasis::new(self.nvars(), r, p))
        })
        .expect("infallible")
    }

    pub fn operator(&self, kind: MapKind) -> Operator {
        match kind {
            MapKind::WedgeOmega => Operator::WedgeLeft(self.fol.omega().clone()),
            MapKind::WedgeDOmega => Operator::WedgeLeft(self.fol.domega().clone()),
            MapKind::Triangle => Operator::Triangle(self.fol.omega().clone()),
            MapKind::ContractDOmega => Operator::ContractInto(self.fol.domega().clone()),
        }
    }

    /// Target slice `(r, p)` of a map from `Ωʳ(p)`.
    pub fn target(&self, kind: MapKind, r: i32, p: i64) -> (i32, i64) {
        let e = self.e();
        match kind {
            MapKind::WedgeOmega => (r + 1, p + e),
            MapKind::WedgeDOmega | MapKind::Triangle => (r + 2, p + e),
            MapKind::ContractDOmega => (1, p + e),
        }
    }

    pub fn matrix(&self, kind: MapKind, r: i32, p: i64) -> Result<Arc<ExactMatrix>> {
        memo(&self.matrices, MapKey { kind, r, p }, || {
            let (tr, tp) = self.target(kind, r, p);
            log::debug!("materializing {kind:?} on ({r}, {p})");
            self.operator(kind)
                .materialize(&self.basis(r, p), &self.basis(tr, tp))
        })
    }

    /// Column space of a map, as an echelon subspace of its target.
    pub fn image(&self, kind: MapKind, r: i32, p: i64) -> Result<Arc<Subspace>> {
        let key = MapKey { kind, r, p };
        memo(&self.images, key, || {
            let m = self.matrix(kind, r, p)?;
            log::debug!("rank of {kind:?} on ({r}, {p}): {}x{}", m.rows(), m.cols());
            Ok(m.image())
        })
    }

    pub fn rank(&self, kind: MapKind, r: i32, p: i64) -> Result<usize> {
        let key = MapKey { kind, r, p };
        if let Some(image) = self.images.lock().expect("cache lock").get(&key) {
            return Ok(image.dim());
        }
        let rank = memo(&self.ranks, key, || Ok(self.matrix(kind, r, p)?.rank()))?;
        Ok(*rank)
    }

    pub fn kernel(&self, kind: MapKind, r: i32, p: i64) -> Result<Arc<Subspace>> {
        memo(&self.kernels, MapKey { kind, r, p }, || {
            Ok(self.matrix(kind, r, p)?.kernel())
        })
    }

    /// Object at position `s` of slice `a`.
    pub fn position(&self, which: ComplexKind, a: i64, s: i64) -> (i32, i64) {
        match which {
            ComplexKind::L | ComplexKind::C => ((2 * s - 1) as i32, a + (s - 1) * self.e()),
            ComplexKind::K => (s as i32, a),
        }
    }

    /// Source object and map kind of the differential leaving position `s`.
    fn outgoing(&self, which: ComplexKind, a: i64, s: i64) -> (MapKind, i32, i64) {
        let (r, p) = self.position(which, a, s);
        let kind = match (which, s) {
            (ComplexKind::L, 0) => MapKind::ContractDOmega,
            (ComplexKind::L, _) => MapKind::WedgeDOmega,
            (ComplexKind::C, _) => MapKind::Triangle,
            (ComplexKind::K, _) => MapKind::WedgeOmega,
        };
        (kind, r, p)
    }

    /// Differential entering position `s`, if any.
    fn incoming(&self, which: ComplexKind, a: i64, s: i64) -> Option<(MapKind, i32, i64)> {
        if s == 0 {
            return None;
        }
        Some(match which {
            ComplexKind::K => self.outgoing(which, a - self.e(), s - 1),
            _ => self.outgoing(which, a, s - 1),
        })
    }

    pub fn slice(&self, which: ComplexKind, a: i64, s: i64) -> Result<ComplexSlice> {
        if s < 0 {
            return Err(Error::usage("complex positions start at 0"));
        }
        let (r, p) = self.position(which, a, s);
        let out = self.outgoing(which, a, s);
        let inc = self.incoming(which, a, s);
        Ok(ComplexSlice {
            which,
            a,
            s,
            object: self.basis(r, p),
            incoming: inc.map(|(k, r, p)| self.matrix(k, r, p)).transpose()?,
            outgoing: self.matrix(out.0, out.1, out.2)?,
        })
    }

    /// `dim Z^s`, `dim B^s`, `dim H^s` of the slice, after checking that the
    /// two differentials compose to zero.
    pub fn homology_dims(&self, which: ComplexKind, a: i64, s: i64) -> Result<HomologyDims> {
        if a < 0 {
            return Ok(HomologyDims::default());
        }
        let slice = self.slice(which, a, s)?;
        slice.check_d_squared()?;
        let (r, p) = self.position(which, a, s);
        let (ok, or, op) = self.outgoing(which, a, s);
        let cycles = self.basis(r, p).dim() - self.rank(ok, or, op)?;
        let boundaries = match self.incoming(which, a, s) {
            Some((k, r, p)) => self.rank(k, r, p)?,
            None => 0,
        };
        if boundaries > cycles {
            return Err(Error::falsification(format!(
                "more boundaries ({boundaries}) than cycles ({cycles}) in {which} at a = {a}, s = {s}"
            )));
        }
        Ok(HomologyDims {
            cycles,
            boundaries,
            homology: cycles - boundaries,
        })
    }

    pub fn compare_cl(&self, a: i64, s: i64) -> Result<ClComparison> {
        if a == self.e() {
            return Ok(ClComparison::Excluded { a, s });
        }
        Ok(ClComparison::Compared {
            a,
            s,
            c: self.homology_dims(ComplexKind::C, a, s)?,
            l: self.homology_dims(ComplexKind::L, a, s)?,
        })
    }

    /// Maps a basis of the `C•` cycles and boundaries at `(a, s)` through `φ`
    /// and tests membership in the `L•` cycles and boundaries.
    pub fn verify_phi(&self, a: i64, s: i64) -> Result<PhiCheck> {
        if a == self.e() && s > 0 {
            return Err(Error::SingularIndex(a));
        }
        let idx = AdmissibleIndices::at_position(s, a, self.e());
        let (r, p) = self.position(ComplexKind::C, a, s);
        let basis = self.basis(r, p);
        let (ck, cr, cp) = self.outgoing(ComplexKind::C, a, s);
        let (lk, lr, lp) = self.outgoing(ComplexKind::L, a, s);
        let c_cycles = self.kernel(ck, cr, cp)?;
        let l_out = self.matrix(lk, lr, lp)?;
        let mut cycles_mapped = true;
        for v in c_cycles.basis() {
            let mapped = basis.coordinates(&phi(&basis.form_from(v), &idx)?)?;
            if !l_out.apply(&mapped).is_zero() {
                cycles_mapped = false;
                break;
            }
        }
        let (boundaries_c, boundaries_l, boundaries_mapped) = match (
            self.incoming(ComplexKind::C, a, s),
            self.incoming(ComplexKind::L, a, s),
        ) {
            (Some((ck, cr, cp)), Some((lk, lr, lp))) => {
                let c_in = self.matrix(ck, cr, cp)?;
                let l_img = self.image(lk, lr, lp)?;
                let mut ok = true;
                for col in c_in.columns() {
                    let mapped = basis.coordinates(&phi(&basis.form_from(col), &idx)?)?;
                    if !l_img.contains(&mapped) {
                        ok = false;
                        break;
                    }
                }
                (self.rank(ck, cr, cp)?, l_img.dim(), ok)
            }
            _ => (0, 0, true),
        };
        Ok(PhiCheck {
            a,
            s,
            cycles_c: c_cycles.dim(),
            cycles_l: basis.dim() - self.rank(lk, lr, lp)?,
            boundaries_c,
            boundaries_l,
            cycles_mapped,
            boundaries_mapped,
        })
    }

    /// Whether a Koszul cycle such as `dω` has a nonzero class in
    /// `H^r(K•(ω))`.
    pub fn koszul_class_is_nonzero(&self, tau: &Form) -> Result<bool> {
        let p = match tau.homogeneous_degree() {
            FormDegree::Degree(p) => p,
            FormDegree::AnyDegree => return Ok(false),
            FormDegree::NotHomogeneous => {
                return Err(Error::usage("Koszul class of a non-homogeneous form"))
            }
        };
        let s = tau.r() as i64;
        let basis = self.basis(tau.r(), p);
        let v = basis.coordinates(tau)?;
        let (ok, or, op) = self.outgoing(ComplexKind::K, p, s);
        if !self.matrix(ok, or, op)?.apply(&v).is_zero() {
            return Err(Error::usage("form is not a Koszul cycle"));
        }
        match self.incoming(ComplexKind::K, p, s) {
            Some((k, r, q)) => Ok(!self.image(k, r, q)?.contains(&v)),
            None => Ok(true),
        }
    }
}

/// One degree slice of a complex around position `s`.
pub struct ComplexSlice {
    pub which: ComplexKind,
    pub a: i64,
    pub s: i64,
    pub object: Arc<SliceBasis>,
    pub incoming: Option<Arc<ExactMatrix>>,
    pub outgoing: Arc<ExactMatrix>,
}

impl ComplexSlice {
    pub fn check_d_squared(&self) -> Result<()> {
        if let Some(inc) = &self.incoming {
            if !self.outgoing.compose(inc)?.is_zero() {
                return Err(Error::falsification(format!(
                    "d^2 != 0 in {} at a = {}, s = {}",
                    self.which, self.a, self.s
                )));
            }
        }
        Ok(())
    }
}

/// Koszul homology of the ideal generated by `gens`, all of degree `delta`.
/// `H^k` at coefficient degree `c` sits at `Λ^k ⊗ S(c)`, between
/// `Λ^{k-1} ⊗ S(c - delta)` and `Λ^{k+1} ⊗ S(c + delta)`.
pub struct IdealKoszul {
    nvars: usize,
    gens: Vec<Poly>,
    delta: i64,
}

impl IdealKoszul {
    pub fn new(gens: Vec<Poly>) -> Result<Self> {
        let nvars = gens
            .first()
            .map(Poly::nvars)
            .ok_or_else(|| Error::usage("no generators"))?;
        let mut delta = None;
        for g in &gens {
            if let Some(d) = g.total_degree() {
                if *delta.get_or_insert(d as i64) != d as i64 {
                    return Err(Error::usage("Koszul generators must share one degree"));
                }
            }
        }
        Ok(IdealKoszul {
            nvars,
            gens,
            delta: delta.unwrap_or(0),
        })
    }

    fn monomials(&self, c: i64) -> (Vec<Monomial>, HashMap<Monomial, usize>) {
        let ms = monomial_basis(self.nvars, c);
        let idx = ms
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, m)| (m, k))
            .collect();
        (ms, idx)
    }

    /// `e_J ⊗ m ↦ Σ_j g_j m e_j ∧ e_J` from `Λ^k ⊗ S(c)`.
    fn differential(&self, k: usize, c: i64) -> ExactMatrix {
        let m = self.gens.len();
        let src_t = if k <= m {
            index_tuples(m, k as i32)
        } else {
            Vec::new()
        };
        let tgt_t = if k < m {
            index_tuples(m, k as i32 + 1)
        } else {
            Vec::new()
        };
        let tgt_pos: HashMap<&Vec<usize>, usize> =
            tgt_t.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let (src_m, _) = self.monomials(c);
        let (tgt_m, tgt_idx) = self.monomials(c + self.delta);
        let mut columns = Vec::with_capacity(src_t.len() * src_m.len());
        for t in &src_t {
            for mono in &src_m {
                let mut pairs = Vec::new();
                for (j, g) in self.gens.iter().enumerate() {
                    if t.binary_search(&j).is_ok() {
                        continue;
                    }
                    let before = t.iter().filter(|&&x| x < j).count();
                    let mut merged = t.clone();
                    merged.insert(before, j);
                    let sign = if before % 2 == 1 {
                        -Scalar::ONE
                    } else {
                        Scalar::ONE
                    };
                    let row_base = tgt_pos[&merged] * tgt_m.len();
                    for (gm, gc) in g.terms() {
                        let row = row_base + tgt_idx[&gm.mul(mono)];
                        pairs.push((row, gc * &sign));
                    }
                }
                columns.push(SparseVec::from_pairs(pairs));
            }
        }
        ExactMatrix::from_columns(tgt_t.len() * tgt_m.len(), columns).expect("rows in range")
    }

    fn object_dim(&self, k: usize, c: i64) -> usize {
        let m = self.gens.len();
        if k > m {
            return 0;
        }
        index_tuples(m, k as i32).len() * monomial_basis(self.nvars, c).len()
    }

    pub fn homology_dims(&self, k: usize, c: i64) -> Result<HomologyDims> {
        if c < 0 {
            return Ok(HomologyDims::default());
        }
        let out = self.differential(k, c);
        let cycles = self.object_dim(k, c) - out.rank();
        let boundaries = if k == 0 {
            0
        } else {
            let inc = self.differential(k - 1, c - self.delta);
            if !out.compose(&inc)?.is_zero() {
                return Err(Error::falsification(
                    "Koszul differential does not square to zero",
                ));
            }
            inc.rank()
        };
        Ok(HomologyDims {
            cycles,
            boundaries,
            homology: cycles - boundaries,
        })
    }
}

/// Diagnostic genericity data; consistency statements, never proofs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericityReport {
    pub lambda_warnings: Vec<String>,
    /// `(a, dim H^0, dim H^1)` of `K•(ω, a)`.
    pub omega_koszul: Vec<(i64, usize, usize)>,
    /// `(c, dim H^0, dim H^1, dim H^2)` of the Koszul complex on the
    /// coefficients of `dω`.
    pub domega_koszul: Vec<(i64, usize, usize, usize)>,
}

impl GenericityReport {
    /// All computed `H^1(K•(ω))` vanish.
    pub fn consistent_with_codim2(&self) -> bool {
        self.omega_koszul
            .iter()
            .all(|&(_, h0, h1)| h0 == 0 && h1 == 0)
    }

    /// All computed `H^0, H^1, H^2` on the `dω` coefficients vanish.
    pub fn consistent_with_codim3(&self) -> bool {
        self.domega_koszul
            .iter()
            .all(|&(_, h0, h1, h2)| h0 == 0 && h1 == 0 && h2 == 0)
    }
}

pub fn genericity_report(engine: &Engine, a_max: i64) -> Result<GenericityReport> {
    let fol = engine.foliation();
    let mut omega_koszul = Vec::new();
    for a in 0..=a_max {
        let h0 = engine.homology_dims(ComplexKind::K, a, 0)?.homology;
        let h1 = engine.homology_dims(ComplexKind::K, a, 1)?.homology;
        omega_koszul.push((a, h0, h1));
    }
    let gens: Vec<Poly> = index_tuples(fol.nvars(), 2)
        .iter()
        .map(|t| fol.domega().coeff(t))
        .collect();
    let koszul = IdealKoszul::new(gens)?;
    let mut domega_koszul = Vec::new();
    for c in 0..=a_max {
        domega_koszul.push((
            c,
            koszul.homology_dims(0, c)?.homology,
            koszul.homology_dims(1, c)?.homology,
            koszul.homology_dims(2, c)?.homology,
        ));
    }
    Ok(GenericityReport {
        lambda_warnings: fol.warnings().to_vec(),
        omega_koszul,
        domega_koszul,
    })
}
