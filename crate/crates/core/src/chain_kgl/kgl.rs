//! Points of the strata `O_{I,J}` of `KGL(V, W)` with `V = W = k^r`.

use serde::Serialize;

use crate::eq_matrix::Matrix;
use crate::error::{Error, Result};
use crate::field_series::Fp;

use super::{validate_stratum, Partition};

/// A subspace of `k^n`, stored by its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subspace {
    #[serde(skip)]
    n: usize,
    #[serde(skip)]
    modulus: u64,
    basis: Vec<Vec<Fp>>,
    #[serde(skip)]
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(vectors: &[Vec<Fp>], n: usize, modulus: u64) -> Self {
        if vectors.is_empty() {
            return Subspace {
                n,
                modulus,
                basis: Vec::new(),
                pivots: Vec::new(),
            };
        }
        let m = Matrix::from_fn(vectors.len(), n, |i, j| vectors[i][j]);
        let (red, pivots) = m.rref();
        Subspace {
            n,
            modulus,
            basis: (0..pivots.len()).map(|i| red.row(i).to_vec()).collect(),
            pivots,
        }
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(indices: impl IntoIterator<Item = usize>, n: usize, modulus: u64) -> Self {
        let vectors: Vec<Vec<Fp>> = indices
            .into_iter()
            .map(|i| unit_vector(i, n, modulus))
            .collect();
        Subspace::span(&vectors, n, modulus)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[Vec<Fp>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Representative of `x` modulo `self` that vanishes on the pivots.
    pub fn reduce(&self, x: &[Fp]) -> Vec<Fp> {
        let mut y = x.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = y[p];
            if !c.is_zero() {
                for (yj, &bj) in y.iter_mut().zip(row) {
                    *yj = *yj - c * bj;
                }
            }
        }
        y
    }

    pub fn contains(&self, x: &[Fp]) -> bool {
        self.reduce(x).iter().all(|c| c.is_zero())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn image(&self, g: &Matrix<Fp>) -> Subspace {
        let imgs: Vec<Vec<Fp>> = self.basis.iter().map(|b| g.apply(b)).collect();
        Subspace::span(&imgs, self.n, self.modulus)
    }
}

pub(crate) fn unit_vector(i: usize, n: usize, modulus: u64) -> Vec<Fp> {
    let mut v = vec![Fp::zero(modulus); n];
    v[i] = Fp::one(modulus);
    v
}

/// The subquotient `hi / lo` with canonical coordinates: reduce modulo `lo`
/// and read off the entries at the pivots of `hi` that are not pivots of `lo`.
#[derive(Clone, Copy, Debug)]
pub struct Subquotient<'a> {
    pub hi: &'a Subspace,
    pub lo: &'a Subspace,
}

impl Subquotient<'_> {
    fn free_pivots(&self) -> Vec<usize> {
        self.hi
            .pivots
            .iter()
            .copied()
            .filter(|p| !self.lo.pivots.contains(p))
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.hi.dim() - self.lo.dim()
    }

    pub fn coords(&self, x: &[Fp]) -> Vec<Fp> {
        let y = self.lo.reduce(x);
        self.free_pivots().iter().map(|&p| y[p]).collect()
    }

    pub fn lift(&self, c: &[Fp]) -> Vec<Fp> {
        let mut x = vec![Fp::zero(self.hi.modulus); self.hi.n];
        let free = self.free_pivots();
        for (row, p) in self.hi.basis.iter().zip(&self.hi.pivots) {
            if let Some(k) = free.iter().position(|q| q == p) {
                for (xj, &bj) in x.iter_mut().zip(row) {
                    *xj = *xj + c[k] * bj;
                }
            }
        }
        x
    }

    /// Matrix of the map `self → target` induced by `g`.
    pub fn induced(&self, g: &Matrix<Fp>, target: &Subquotient<'_>) -> Matrix<Fp> {
        let k = self.dim();
        let m = self.hi.modulus;
        let cols: Vec<Vec<Fp>> = (0..k)
            .map(|c| target.coords(&g.apply(&self.lift(&unit_vector(c, k, m)))))
            .collect();
        Matrix::from_columns(&cols, target.dim(), m)
    }
}

/// An isomorphism up to a nonzero scalar, normalized so that its first
/// nonzero entry in row-major order is 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct HomothetyClass {
    rep: Matrix<Fp>,
}

impl HomothetyClass {
    pub fn new(m: &Matrix<Fp>) -> Self {
        let rep = match m.entries().iter().find(|x| !x.is_zero()) {
            Some(lead) => m.scale(lead.inv().expect("nonzero")),
            None => m.clone(),
        };
        HomothetyClass { rep }
    }

    pub fn rep(&self) -> &Matrix<Fp> {
        &self.rep
    }
}

/// `Φ = (F•(V), F•(W), φ̄_1..φ̄_{n1}, ψ̄_1..ψ̄_{n2}, Φ')`.
///
/// Flags have `n1 + n2 + 2` entries `F_0 = 0, …, F_{n+1} = k^r`. The class
/// `φ_ν` maps `F_{n1−ν+1}(W)/F_{n1−ν}(W)` to `F_{n2+ν+1}(V)/F_{n2+ν}(V)`,
/// `ψ_ν` maps `F_{n2−ν+1}(V)/F_{n2−ν}(V)` to `F_{n1+ν+1}(W)/F_{n1+ν}(W)`,
/// and `Φ'` maps `F_{n2+1}(V)/F_{n2}(V)` to `F_{n1+1}(W)/F_{n1}(W)`, all in
/// the canonical subquotient coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KglPoint {
    pub r: usize,
    #[serde(rename = "I")]
    pub i_set: Vec<usize>,
    #[serde(rename = "J")]
    pub j_set: Vec<usize>,
    pub flag_v: Vec<Subspace>,
    pub flag_w: Vec<Subspace>,
    pub phi: Vec<HomothetyClass>,
    pub psi: Vec<HomothetyClass>,
    pub middle: Matrix<Fp>,
    #[serde(skip)]
    pub modulus: u64,
}

/// Flag dimensions `(dim F_ν(V), dim F_ν(W))` of the stratum `O_{I,J}`.
pub fn flag_dims(r: usize, i_set: &[usize], j_set: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let (n1, n2) = (i_set.len(), j_set.len());
    // one-based with i_{n1+1} = j_{n2+1} = r
    let i = |nu: usize| if nu == n1 + 1 { r } else { i_set[nu - 1] };
    let j = |nu: usize| if nu == n2 + 1 { r } else { j_set[nu - 1] };
    let v = (0..=n1 + n2 + 1)
        .map(|nu| if nu <= n2 { r - j(n2 + 1 - nu) } else { i(nu - n2) })
        .collect();
    let w = (0..=n1 + n2 + 1)
        .map(|nu| if nu <= n1 { r - i(n1 + 1 - nu) } else { j(nu - n1) })
        .collect();
    (v, w)
}

impl KglPoint {
    pub fn n1(&self) -> usize {
        self.i_set.len()
    }

    pub fn n2(&self) -> usize {
        self.j_set.len()
    }

    fn sq<'a>(flag: &'a [Subspace], hi: usize) -> Subquotient<'a> {
        Subquotient {
            hi: &flag[hi],
            lo: &flag[hi - 1],
        }
    }

    /// Source (in `W`) and target (in `V`) of `φ_ν`, `ν` one-based.
    fn phi_spaces(&self, nu: usize) -> (Subquotient<'_>, Subquotient<'_>) {
        (
            Self::sq(&self.flag_w, self.n1() - nu + 1),
            Self::sq(&self.flag_v, self.n2() + nu + 1),
        )
    }

    /// Source (in `V`) and target (in `W`) of `ψ_ν`.
    fn psi_spaces(&self, nu: usize) -> (Subquotient<'_>, Subquotient<'_>) {
        (
            Self::sq(&self.flag_v, self.n2() - nu + 1),
            Self::sq(&self.flag_w, self.n1() + nu + 1),
        )
    }

    /// Source (in `V`) and target (in `W`) of `Φ'`.
    fn middle_spaces(&self) -> (Subquotient<'_>, Subquotient<'_>) {
        (
            Self::sq(&self.flag_v, self.n2() + 1),
            Self::sq(&self.flag_w, self.n1() + 1),
        )
    }

    /// Coordinate flags (initial segments in `V`, final segments in `W`)
    /// with every class and `Φ'` the identity.
    pub fn standard(r: usize, i_set: &[usize], j_set: &[usize], modulus: u64) -> Result<Self> {
        validate_stratum(r, i_set, j_set)?;
        let (dv, dw) = flag_dims(r, i_set, j_set);
        let flag_v = dv
            .iter()
            .map(|&d| Subspace::coordinate(0..d, r, modulus))
            .collect();
        let flag_w = dw
            .iter()
            .map(|&d| Subspace::coordinate(r - d..r, r, modulus))
            .collect();
        let mut pt = KglPoint {
            r,
            i_set: i_set.to_vec(),
            j_set: j_set.to_vec(),
            flag_v,
            flag_w,
            phi: Vec::new(),
            psi: Vec::new(),
            middle: Matrix::identity(0, modulus),
            modulus,
        };
        let id = |d: usize| HomothetyClass::new(&Matrix::identity(d, modulus));
        pt.phi = (1..=pt.n1()).map(|nu| id(pt.phi_spaces(nu).0.dim())).collect();
        pt.psi = (1..=pt.n2()).map(|nu| id(pt.psi_spaces(nu).0.dim())).collect();
        pt.middle = Matrix::identity(pt.middle_spaces().0.dim(), modulus);
        Ok(pt)
    }

    /// The point attached to a partition: `J = ∅`, flags
    /// `F_i(V) = k^{D_1⊔…⊔D_i}`, `F_i(W) = k^{D_{m−i+1}⊔…⊔D_m}`, identities.
    pub fn from_partition(part: &Partition, modulus: u64) -> Result<Self> {
        part.validate()?;
        KglPoint::standard(part.r, &part.stratum_i(), &[], modulus)
    }

    pub fn validate(&self) -> Result<()> {
        validate_stratum(self.r, &self.i_set, &self.j_set)?;
        let bad = |s: String| Err(Error::InvalidPoint(s));
        let (dv, dw) = flag_dims(self.r, &self.i_set, &self.j_set);
        for (name, flag, dims) in [("V", &self.flag_v, &dv), ("W", &self.flag_w, &dw)] {
            let got: Vec<usize> = flag.iter().map(Subspace::dim).collect();
            if &got != dims {
                return bad(format!("flag in {name} has dimensions {got:?}, expected {dims:?}"));
            }
            if flag.iter().any(|s| s.ambient() != self.r) {
                return bad(format!("flag in {name} lives in the wrong space"));
            }
            if flag.windows(2).any(|w| !w[0].is_subspace_of(&w[1])) {
                return bad(format!("flag in {name} is not nested"));
            }
        }
        if self.phi.len() != self.n1() || self.psi.len() != self.n2() {
            return bad("wrong number of homothety classes".into());
        }
        let check = |m: &Matrix<Fp>, src: usize, tgt: usize, what: String| -> Result<()> {
            if m.rows() != tgt || m.cols() != src {
                return Err(Error::InvalidPoint(format!(
                    "{what} is {}x{}, expected {tgt}x{src}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.rows() > 0 && m.inverse().is_err() {
                return Err(Error::InvalidPoint(format!("{what} is not invertible")));
            }
            Ok(())
        };
        for nu in 1..=self.n1() {
            let (s, t) = self.phi_spaces(nu);
            check(self.phi[nu - 1].rep(), s.dim(), t.dim(), format!("phi_{nu}"))?;
        }
        for nu in 1..=self.n2() {
            let (s, t) = self.psi_spaces(nu);
            check(self.psi[nu - 1].rep(), s.dim(), t.dim(), format!("psi_{nu}"))?;
        }
        let (s, t) = self.middle_spaces();
        check(&self.middle, s.dim(), t.dim(), "middle isomorphism".into())
    }

    /// Image under the automorphism `(g_V, g_W)` of `V × W`: flags are
    /// mapped, `φ ↦ ḡ_V φ ḡ_W⁻¹`, `ψ ↦ ḡ_W ψ ḡ_V⁻¹`, `Φ' ↦ ḡ_W Φ' ḡ_V⁻¹`.
    pub fn transform(&self, g_v: &Matrix<Fp>, g_w: &Matrix<Fp>) -> Result<KglPoint> {
        for g in [g_v, g_w] {
            if g.rows() != self.r || g.cols() != self.r {
                return Err(Error::Dimension(format!("expected {}x{} matrix", self.r, self.r)));
            }
            g.inverse()?;
        }
        let mut out = self.clone();
        out.flag_v = self.flag_v.iter().map(|s| s.image(g_v)).collect();
        out.flag_w = self.flag_w.iter().map(|s| s.image(g_w)).collect();
        let conj = |lhs: Matrix<Fp>, m: &Matrix<Fp>, rhs: Matrix<Fp>| -> Result<Matrix<Fp>> {
            if m.rows() == 0 {
                return Ok(m.clone());
            }
            Ok(lhs.mul(m).mul(&rhs.inverse()?))
        };
        for nu in 1..=self.n1() {
            let (s_old, t_old) = self.phi_spaces(nu);
            let (s_new, t_new) = out.phi_spaces(nu);
            let gv = t_old.induced(g_v, &t_new);
            let gw = s_old.induced(g_w, &s_new);
            out.phi[nu - 1] = HomothetyClass::new(&conj(gv, self.phi[nu - 1].rep(), gw)?);
        }
        for nu in 1..=self.n2() {
            let (s_old, t_old) = self.psi_spaces(nu);
            let (s_new, t_new) = out.psi_spaces(nu);
            let gw = t_old.induced(g_w, &t_new);
            let gv = s_old.induced(g_v, &s_new);
            out.psi[nu - 1] = HomothetyClass::new(&conj(gw, self.psi[nu - 1].rep(), gv)?);
        }
        let (s_old, t_old) = self.middle_spaces();
        let (s_new, t_new) = out.middle_spaces();
        let gw = t_old.induced(g_w, &t_new);
        let gv = s_old.induced(g_v, &s_new);
        out.middle = conj(gw, &self.middle, gv)?;
        Ok(out)
    }

    /// Bases `v`, `w` (as the columns of `g_V`, `g_W`) and the interval
    /// partition such that `self = standard.transform(g_V, g_W)`.
    ///
    /// Only defined for `J = ∅`. The vectors `w_i` lift the canonical bases
    /// of the `W`-subquotients, `v_i` lift their images under `φ`, and on
    /// `D_1` the roles are exchanged through `Φ'`.
    pub fn adapted_basis(&self) -> Result<(Matrix<Fp>, Matrix<Fp>, Partition)> {
        if !self.j_set.is_empty() {
            return Err(Error::NotAdapted("adapted bases need J = ∅".into()));
        }
        self.validate()?;
        let part = Partition::from_stratum_i(self.r, &self.i_set)?;
        let m = part.m();
        let p = self.modulus;
        let mut v = Vec::with_capacity(self.r);
        let mut w = Vec::with_capacity(self.r);
        let (src, tgt) = self.middle_spaces();
        for k in 0..src.dim() {
            let e = unit_vector(k, src.dim(), p);
            v.push(src.lift(&e));
            w.push(tgt.lift(&self.middle.apply(&e)));
        }
        for nu in 1..m {
            let (src, tgt) = self.phi_spaces(nu);
            for k in 0..src.dim() {
                let e = unit_vector(k, src.dim(), p);
                w.push(src.lift(&e));
                v.push(tgt.lift(&self.phi[nu - 1].rep().apply(&e)));
            }
        }
        Ok((
            Matrix::from_columns(&v, self.r, p),
            Matrix::from_columns(&w, self.r, p),
            part,
        ))
    }

    /// Whether the point equals the standard point of its own stratum.
    pub fn is_standard(&self) -> bool {
        KglPoint::standard(self.r, &self.i_set, &self.j_set, self.modulus).is_ok_and(|s| &s == self)
    }
}
