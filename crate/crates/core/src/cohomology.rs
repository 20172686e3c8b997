//! Adjoint Chevalley–Eilenberg cochains of the model filiform algebra
//! `L_{n+1}` on `e_0, ..., e_n` (`[e_0, e_i] = e_{i+1}`), the cocycles
//! `ψ_{k,s}`, deformations `μ_0 + ψ` and the finite gradings they admit.

use std::collections::BTreeMap;

use num_integer::binomial;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::grading::{verify_grading, Grading};
use crate::group::{FGAbelianGroup, GroupElement};
use crate::lie::{BilinearMap, LieAlgebra};
use crate::linalg::{rat, RatMatrix, Rational, Vector};

/// A 2-cochain with values in the algebra; same storage as a bracket table.
pub type Cochain2 = BilinearMap;

/// Basis index triple `(x, y, z)`.
pub type Triple = (usize, usize, usize);

/// Labels `e0, ..., en`.
pub fn e_labels(dim: usize) -> Vec<String> {
    (0..dim).map(|i| format!("e{i}")).collect()
}

/// `μ_0`, the bracket of `L_{n+1}`: `[e_0, e_i] = e_{i+1}` for `1 <= i <= n-1`.
pub fn mu0(n: usize) -> LieAlgebra {
    let mut t = BilinearMap::zero(n + 1);
    for i in 1..n {
        t.add_term(0, i, i + 1, rat(1));
    }
    LieAlgebra::new(t, e_labels(n + 1)).expect("L_{n+1} satisfies Jacobi")
}

/// Weight `s - 2k - 1` of `ψ_{k,s}`.
pub fn psi_weight(k: usize, s: usize) -> i64 {
    s as i64 - 2 * k as i64 - 1
}

/// The cocycle `ψ_{k,s}` on `L_{n+1}`:
/// `ψ(e_k, e_{k+1}) = e_s` and, for `1 <= i <= k < j-1 <= n-1` with
/// `0 <= i+j-2k-1 <= n-s`,
/// `ψ(e_i, e_j) = (-1)^{k-i} C(j-k-1, k-i) e_{i+j+s-2k-1}`.
pub fn psi(n: usize, k: usize, s: usize) -> Result<Cochain2> {
    if k < 1 || k + 1 > n || s < 2 * k || s > n {
        return Err(Error::Precondition(format!(
            "psi_{{{k},{s}}} needs 1 <= k <= n-1 and 2k <= s <= n (n = {n})"
        )));
    }
    let mut c = BilinearMap::zero(n + 1);
    c.add_term(k, k + 1, s, rat(1));
    for i in 1..=k {
        for j in k + 2..=n {
            let shift = i + j;
            if shift < 2 * k + 1 || shift - 2 * k - 1 > n - s {
                continue;
            }
            let coeff = binomial(j as i64 - k as i64 - 1, (k - i) as i64);
            if coeff == 0 {
                continue;
            }
            let sign = if (k - i).is_multiple_of(2) { 1 } else { -1 };
            c.add_term(i, j, shift + s - 2 * k - 1, rat(sign * coeff));
        }
    }
    Ok(c)
}

fn dot_bracket(mu: &BilinearMap, x: usize, v: &[Rational]) -> Vector {
    let n = mu.dim();
    let mut out = vec![Rational::zero(); n];
    for (y, c) in v.iter().enumerate() {
        if c.is_zero() || y == x {
            continue;
        }
        for (k, d) in mu.terms(x, y) {
            out[k] += c * &d;
        }
    }
    out
}

/// `dφ(x,y,z) = [x,φ(y,z)] - [y,φ(x,z)] + [z,φ(x,y)]
///            - φ([x,y],z) + φ([x,z],y) - φ([y,z],x)` on basis triples.
fn d2_value(mu: &BilinearMap, phi: &BilinearMap, x: usize, y: usize, z: usize) -> Vector {
    let n = mu.dim();
    let mut out = vec![Rational::zero(); n];
    let mut add = |v: Vector, sign: i64| {
        for (o, c) in out.iter_mut().zip(v) {
            if sign > 0 {
                *o += c;
            } else {
                *o -= c;
            }
        }
    };
    add(dot_bracket(mu, x, &phi.value(y, z)), 1);
    add(dot_bracket(mu, y, &phi.value(x, z)), -1);
    add(dot_bracket(mu, z, &phi.value(x, y)), 1);
    let phi_of = |w: Vector, b: usize| -> Vector {
        let mut r = vec![Rational::zero(); n];
        for (a, c) in w.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, d) in phi.terms(a, b) {
                r[k] += c * &d;
            }
        }
        r
    };
    add(phi_of(mu.value(x, y), z), -1);
    add(phi_of(mu.value(x, z), y), 1);
    add(phi_of(mu.value(y, z), x), -1);
    out
}

/// Nonzero values of `dφ` on basis triples `x < y < z`.
pub fn ce_d2(mu0: &LieAlgebra, phi: &Cochain2) -> Result<Vec<(Triple, Vector)>> {
    let n = mu0.dim();
    if phi.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: phi.dim(),
        });
    }
    let mut out = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let v = d2_value(mu0.table(), phi, x, y, z);
                if v.iter().any(|c| !c.is_zero()) {
                    out.push(((x, y, z), v));
                }
            }
        }
    }
    Ok(out)
}

pub fn is_cocycle(mu0: &LieAlgebra, phi: &Cochain2) -> Result<bool> {
    Ok(ce_d2(mu0, phi)?.is_empty())
}

/// `μ_0 + ψ`, rejected unless `ψ` is a cocycle and the sum satisfies Jacobi.
pub fn deform(mu0: &LieAlgebra, psi: &Cochain2) -> Result<LieAlgebra> {
    if !is_cocycle(mu0, psi)? {
        return Err(Error::NotACocycle);
    }
    LieAlgebra::new(mu0.table().add(psi), mu0.labels().to_vec())
}

/// One term `c ψ_{k,s}` of a deformation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PsiTerm {
    pub k: usize,
    pub s: usize,
    pub coeff: Rational,
}

impl PsiTerm {
    pub fn new(k: usize, s: usize, coeff: Rational) -> Self {
        Self { k, s, coeff }
    }

    pub fn unit(k: usize, s: usize) -> Self {
        Self::new(k, s, Rational::one())
    }

    pub fn weight(&self) -> i64 {
        psi_weight(self.k, self.s)
    }
}

/// `Σ c ψ_{k,s}` as a single cochain.
pub fn psi_sum(n: usize, terms: &[PsiTerm]) -> Result<Cochain2> {
    let mut acc = BilinearMap::zero(n + 1);
    for t in terms {
        acc = acc.add(&psi(n, t.k, t.s)?.scale(&t.coeff));
    }
    Ok(acc)
}

/// The algebra `μ_0 + Σ c ψ_{k,s}` of dimension `n + 1`.
pub fn deformation(n: usize, terms: &[PsiTerm]) -> Result<LieAlgebra> {
    deform(&mu0(n), &psi_sum(n, terms)?)
}

/// `μ_0 + ψ_{1,4} + α ψ_{2,6} + ψ_{2,8} + (3α²/(α+2)) ψ_{3,8}` in dimension 9,
/// defined for `α ∉ {0, -2}`.
pub fn dim9_family_terms(alpha: &Rational) -> Result<Vec<PsiTerm>> {
    if alpha.is_zero() || *alpha == rat(-2) {
        return Err(Error::Precondition(
            "the dimension-9 family needs α ∉ {0, -2}".into(),
        ));
    }
    let c = rat(3) * alpha * alpha / (alpha + rat(2));
    Ok(vec![
        PsiTerm::unit(1, 4),
        PsiTerm::new(2, 6, alpha.clone()),
        PsiTerm::unit(2, 8),
        PsiTerm::new(3, 8, c),
    ])
}

pub fn dim9_family(alpha: &Rational) -> Result<LieAlgebra> {
    deformation(8, &dim9_family_terms(alpha)?)
}

/// `μ_0 + ψ_{1,4} + ψ_{1,4+k}` in dimension `k + 5`.
pub fn zk_family_terms(k: usize) -> Vec<PsiTerm> {
    vec![PsiTerm::unit(1, 4), PsiTerm::unit(1, 4 + k)]
}

pub fn zk_family(k: usize) -> Result<LieAlgebra> {
    deformation(k + 4, &zk_family_terms(k))
}

/// Recovers `a = μ_0 + Σ a_{k,s} ψ_{k,s}`: `a_{k,s}` is the coefficient of
/// `e_s` in `(a - μ_0)(e_k, e_{k+1})`, since `ψ_{k',s}(e_k, e_{k+1}) = 0` for
/// `k' != k`. Fails when the reconstruction does not reproduce `a`.
pub fn decompose_psi(a: &LieAlgebra) -> Result<Vec<PsiTerm>> {
    let dim = a.dim();
    if dim < 3 {
        return Err(Error::Precondition(
            "dimension too small for a deformation of L".into(),
        ));
    }
    let n = dim - 1;
    let base = mu0(n);
    let diff = a.table().add(&base.table().scale(&rat(-1)));
    let mut terms = Vec::new();
    for k in 1..n {
        for (s, c) in diff.terms(k, k + 1) {
            if s < 2 * k {
                return Err(Error::Precondition(format!(
                    "term e{s} in [e{k}, e{}] is below ψ range",
                    k + 1
                )));
            }
            terms.push(PsiTerm::new(k, s, c));
        }
    }
    if psi_sum(n, &terms)? != diff {
        return Err(Error::Precondition(
            "bracket is not of the form μ_0 + Σ a_{k,s} ψ_{k,s}".into(),
        ));
    }
    Ok(terms)
}

/// Weight of each structure constant under `deg e_0 = 1`, `deg e_i = i`.
fn constant_weight(i: usize, j: usize, t: usize) -> i64 {
    let deg = |x: usize| if x == 0 { 1 } else { x as i64 };
    t as i64 - deg(i) - deg(j)
}

/// The sill algebra: weight-zero constants plus the lowest positive weight.
/// When the weight-zero part contains brackets `[e_i, e_{n-i}]` (the `Q`
/// pattern) and some positive-weight constant lands on `e_n`, only those
/// constants are kept instead.
pub fn sill_algebra(a: &LieAlgebra) -> Result<LieAlgebra> {
    if !a.is_filiform().filiform {
        return Err(Error::NotFiliform);
    }
    let n = a.dim() - 1;
    let mut zero = BilinearMap::zero(a.dim());
    let mut positive: Vec<(usize, usize, usize, Rational, i64)> = Vec::new();
    let mut q_type = false;
    for (&(i, j), terms) in a.table().iter() {
        for (t, c) in terms {
            let w = constant_weight(i, j, *t);
            match w {
                w if w < 0 => {
                    return Err(Error::Precondition(format!(
                        "[e{i}, e{j}] has a term along e{t} of negative weight; basis is not adapted"
                    )))
                }
                0 => {
                    if i >= 1 {
                        q_type = true;
                    }
                    zero.add_term(i, j, *t, c.clone());
                }
                w => positive.push((i, j, *t, c.clone(), w)),
            }
        }
    }
    let keep: Vec<_> = if q_type && positive.iter().any(|p| p.2 == n) {
        positive.into_iter().filter(|p| p.2 == n).collect()
    } else {
        let min = positive.iter().map(|p| p.4).min();
        positive.into_iter().filter(|p| Some(p.4) == min).collect()
    };
    for (i, j, t, c, _) in keep {
        zero.add_term(i, j, t, c);
    }
    LieAlgebra::new(zero, a.labels().to_vec())
}

/// The finite gradings of deformations `μ_0 + ψ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Z2Decomposition {
    /// `<e_1, e_3, ...> ⊕ <e_0, e_2, e_4, ...>`, for `ψ` with all `s` even.
    EvenS,
    /// `<e_2, e_4, ...> ⊕ <e_0, e_1, e_3, ...>`, for `ψ` with all `s` odd.
    OddS,
    /// `<e_2, e_4, ..., e_{n-1}> ⊕ <e_0, e_1, e_3, ..., e_n>`, `Q` pattern, odd `s`.
    QFirst,
    /// `<e_0 + c e_1, e_n> ⊕ <e_1, ..., e_{n-1}>`, `Q` pattern.
    QSecond,
    /// `<e_1, e_3, ..., e_{n-2}> ⊕ <e_0 + c e_1, e_2, e_4, ..., e_{n-1}, e_n>`, `Q` pattern, even `s`.
    QThird,
}

fn z2() -> FGAbelianGroup {
    FGAbelianGroup::cyclic(2)
}

fn z2_el(x: i64) -> GroupElement {
    z2().reduce(GroupElement {
        torsion: vec![x],
        free: vec![],
    })
}

/// Builds one of the displayed `Z_2` decompositions. The degree-zero part is
/// the one closed under the bracket of `μ_0`.
pub fn z2_decomposition(a: &LieAlgebra, which: Z2Decomposition) -> Result<Grading> {
    let dim = a.dim();
    let n = dim - 1;
    let aligned = |deg: Vec<i64>| Grading::new(a.clone(), z2(), deg.into_iter().map(z2_el).collect());
    // homogeneous basis e_0 + c e_1, e_1, ..., e_n with c chosen so that
    // [e_0 + c e_1, e_{n-1}] = 0; c = 1 when ψ_{(n-1)/2,n} enters as (-1)^{(n-1)/2}
    let shift = q_shift(a);
    let shifted = || {
        let mut m = RatMatrix::identity(dim);
        m[(1, 0)] = shift.clone();
        m
    };
    let g = match which {
        Z2Decomposition::EvenS => aligned(
            (0..=n)
                .map(|i| if i == 0 { 1 } else { (i as i64 + 1) % 2 })
                .collect(),
        )?,
        Z2Decomposition::OddS | Z2Decomposition::QFirst => {
            aligned((0..=n).map(|i| if i == 0 { 1 } else { i as i64 % 2 }).collect())?
        }
        Z2Decomposition::QSecond => {
            let deg = (0..=n)
                .map(|i| if i == 0 || i == n { 0 } else { 1 })
                .collect::<Vec<i64>>();
            Grading::with_basis(a.clone(), shifted(), z2(), deg.into_iter().map(z2_el).collect())?
        }
        Z2Decomposition::QThird => {
            // odd indices below n in one part, the rest with e_0 + e_1
            let deg = (0..=n)
                .map(|i| if i == 0 || i == n || i % 2 == 0 { 1 } else { 0 })
                .collect::<Vec<i64>>();
            Grading::with_basis(a.clone(), shifted(), z2(), deg.into_iter().map(z2_el).collect())?
        }
    };
    Ok(g.named(format!("{which:?}")))
}

fn q_shift(a: &LieAlgebra) -> Rational {
    let n = a.dim() - 1;
    if n < 3 || n.is_multiple_of(2) {
        return rat(1);
    }
    let m = (n - 1) / 2;
    let coeff = decompose_psi(a)
        .ok()
        .and_then(|ts| ts.into_iter().find(|t| t.k == m && t.s == n).map(|t| t.coeff));
    match coeff {
        Some(c) if !c.is_zero() => {
            let sign = if m.is_multiple_of(2) { rat(1) } else { rat(-1) };
            sign / c
        }
        _ => rat(1),
    }
}

/// The `Z_2` grading for a deformation whose `ψ` terms share the parity of `s`.
pub fn cn_z2_grading(a: &LieAlgebra, which: Z2Decomposition) -> Result<Grading> {
    let terms = decompose_psi(a)?;
    let n = a.dim() - 1;
    let wanted = match which {
        Z2Decomposition::EvenS | Z2Decomposition::QThird => Some(0),
        Z2Decomposition::OddS | Z2Decomposition::QFirst => Some(1),
        Z2Decomposition::QSecond => None,
    };
    if let Some(parity) = wanted {
        let q_term = |t: &PsiTerm| n % 2 == 1 && t.k == (n - 1) / 2 && t.s == n;
        let q_pattern = matches!(which, Z2Decomposition::QFirst | Z2Decomposition::QThird);
        if let Some(bad) = terms
            .iter()
            .find(|t| t.s % 2 != parity && !(q_pattern && q_term(t)))
        {
            return Err(Error::Precondition(format!(
                "ψ_{{{},{}}} has the wrong parity of s for {which:?}",
                bad.k, bad.s
            )));
        }
    }
    let g = z2_decomposition(a, which)?;
    verify_grading(&g).map_err(|v| Error::Precondition(format!("{which:?} is not a grading: {v}")))?;
    Ok(g)
}

/// Picks the `Z_2` decomposition matching the parity of the `ψ` terms.
pub fn auto_z2_grading(a: &LieAlgebra) -> Result<Grading> {
    let terms = decompose_psi(a)?;
    let n = a.dim() - 1;
    let q_term = |t: &PsiTerm| n % 2 == 1 && t.k == (n - 1) / 2 && t.s == n;
    let has_q = terms.iter().any(q_term);
    let rest: Vec<&PsiTerm> = terms.iter().filter(|t| !(has_q && q_term(t))).collect();
    let even = rest.iter().all(|t| t.s % 2 == 0);
    let odd = rest.iter().all(|t| t.s % 2 == 1);
    let which = match (has_q, even, odd) {
        (false, true, _) => Z2Decomposition::EvenS,
        (false, false, true) => Z2Decomposition::OddS,
        (true, true, _) => Z2Decomposition::QThird,
        (true, false, true) => Z2Decomposition::QFirst,
        _ => return Err(Error::Precondition("ψ terms mix parities of s".into())),
    };
    cn_z2_grading(a, which)
}

/// The `Z_k` grading `deg e_0 = 1`, `deg e_i = i - 1 + c`, where
/// `c ≡ s - 2h (mod k)` is shared by every term `ψ_{h,s}`. With `k = 2` this
/// is the parity construction.
pub fn cn_zk_grading(a: &LieAlgebra, k: usize) -> Result<Grading> {
    let dim = a.dim();
    let n = dim - 1;
    if k == 2 {
        return auto_z2_grading(a);
    }
    if k < 2 {
        return Err(Error::Precondition(format!("k = {k} must be at least 2")));
    }
    if k + 2 >= n {
        return Err(Error::Precondition(format!(
            "k = {k} must satisfy k < n - 2 = {}",
            n as i64 - 2
        )));
    }
    let terms = decompose_psi(a)?;
    let k64 = k as i64;
    let classes: Vec<i64> = terms
        .iter()
        .map(|t| (t.s as i64 - 2 * t.k as i64).rem_euclid(k64))
        .collect();
    let c = classes.first().copied().unwrap_or(0);
    if classes.iter().any(|&x| x != c) {
        return Err(Error::Precondition(format!(
            "ψ terms have different s - 2h modulo {k}"
        )));
    }
    let group = FGAbelianGroup::cyclic(k64);
    let degrees = (0..dim)
        .map(|i| {
            let d = if i == 0 { 1 } else { i as i64 - 1 + c };
            group.reduce(GroupElement {
                torsion: vec![d],
                free: vec![],
            })
        })
        .collect();
    let g = Grading::new(a.clone(), group, degrees)?.named(format!("Z_{k}(c={c})"));
    verify_grading(&g).map_err(|v| Error::Precondition(format!("Z_{k} construction fails: {v}")))?;
    Ok(g)
}

/// Per-weight second cohomology of `L_{n+1}` and the position of the `ψ`
/// classes in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H2Report {
    pub n: usize,
    /// `dim H²_p` for every weight carrying nonzero cochains.
    pub dims: BTreeMap<i64, usize>,
    /// The basis candidates `ψ_{k,s}`: `1 <= k <= [n/2]-1`, `2k+2 <= s <= n`,
    /// plus `ψ_{(n-1)/2, n}` for odd `n`.
    pub psi_basis: Vec<(usize, usize)>,
    /// The `ψ` classes are linearly independent modulo coboundaries.
    pub independent: bool,
    /// Their count in positive weights equals `dim F_1 H²`.
    pub spans_f1: bool,
}

impl H2Report {
    pub fn f1_dim(&self) -> usize {
        self.dims.iter().filter(|(p, _)| **p >= 1).map(|(_, d)| d).sum()
    }
}

pub fn psi_basis(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for k in 1..(n / 2).max(1) {
        for s in 2 * k + 2..=n {
            out.push((k, s));
        }
    }
    if n % 2 == 1 {
        out.push(((n - 1) / 2, n));
    }
    out
}

fn cochain_coords(phi: &BilinearMap, pairs: &[(usize, usize)]) -> Vector {
    let dim = phi.dim();
    let mut v = vec![Rational::zero(); pairs.len() * dim];
    for (idx, &(i, j)) in pairs.iter().enumerate() {
        for (k, c) in phi.terms(i, j) {
            v[idx * dim + k] = c;
        }
    }
    v
}

/// Weight-graded `H²(L_{n+1}, L_{n+1})`, by exact kernel and image ranks.
pub fn h2_weight_dims(n: usize) -> Result<H2Report> {
    if n < 4 {
        return Err(Error::Precondition(format!("n = {n} must be at least 4")));
    }
    let mu = mu0(n);
    let dim = n + 1;
    let deg = |x: usize| if x == 0 { 1i64 } else { x as i64 };
    let pairs: Vec<(usize, usize)> = (0..dim).flat_map(|i| (i + 1..dim).map(move |j| (i, j))).collect();
    let mut by_weight: BTreeMap<i64, Vec<(usize, usize, usize)>> = BTreeMap::new();
    for &(i, j) in &pairs {
        for t in 0..dim {
            by_weight
                .entry(deg(t) - deg(i) - deg(j))
                .or_default()
                .push((i, j, t));
        }
    }
    let mut dims = BTreeMap::new();
    let mut independent = true;
    let basis = psi_basis(n);
    for (&p, elems) in &by_weight {
        // cocycles of weight p
        let mut columns = Vec::new();
        for &(i, j, t) in elems {
            let mut phi = BilinearMap::zero(dim);
            phi.add_term(i, j, t, rat(1));
            let d: Vector = ce_d2(&mu, &phi)?
                .into_iter()
                .flat_map(|((x, y, z), v)| {
                    let tag = (x * dim + y) * dim + z;
                    v.into_iter().enumerate().map(move |(m, c)| (tag * dim + m, c))
                })
                .fold(BTreeMap::new(), |mut acc: BTreeMap<usize, Rational>, (idx, c)| {
                    if !c.is_zero() {
                        acc.insert(idx, c);
                    }
                    acc
                })
                .into_iter()
                .flat_map(|(idx, c)| [rat(idx as i64), c])
                .collect();
            columns.push(d);
        }
        let cocycle_dim = elems.len() - sparse_rank(&columns);
        // coboundaries of weight p: images of f(e_a) = e_t with deg t = deg a + p
        let mut boundaries: Vec<Vector> = Vec::new();
        for a in 0..dim {
            for t in 0..dim {
                if deg(t) - deg(a) != p {
                    continue;
                }
                let mut f = RatMatrix::zeros(dim, dim);
                f[(t, a)] = rat(1);
                boundaries.push(cochain_coords(&d1(&mu, &f), &pairs));
            }
        }
        let b_rank = RatMatrix::from_rows_with_cols(&boundaries, pairs.len() * dim).rank();
        dims.insert(p, cocycle_dim - b_rank);
        let psis: Vec<Vector> = basis
            .iter()
            .filter(|&&(k, s)| psi_weight(k, s) == p)
            .map(|&(k, s)| psi(n, k, s).map(|c| cochain_coords(&c, &pairs)))
            .collect::<Result<_>>()?;
        if !psis.is_empty() {
            let mut all = boundaries.clone();
            all.extend(psis.iter().cloned());
            let total = RatMatrix::from_rows_with_cols(&all, pairs.len() * dim).rank();
            if total != b_rank + psis.len() {
                independent = false;
            }
        }
    }
    let positive = basis.iter().filter(|&&(k, s)| psi_weight(k, s) >= 1).count();
    let mut report = H2Report {
        n,
        dims,
        psi_basis: basis,
        independent,
        spans_f1: false,
    };
    report.spans_f1 = report.f1_dim() == positive;
    Ok(report)
}

/// Rank of vectors given sparsely as flattened `(index, value)` pairs.
fn sparse_rank(columns: &[Vector]) -> usize {
    let mut index: BTreeMap<i64, usize> = BTreeMap::new();
    let decoded: Vec<Vec<(usize, Rational)>> = columns
        .iter()
        .map(|c| {
            c.chunks(2)
                .map(|pair| {
                    let key = pair[0].to_integer().try_into().unwrap_or(i64::MAX);
                    let next = index.len();
                    (*index.entry(key).or_insert(next), pair[1].clone())
                })
                .collect()
        })
        .collect();
    let width = index.len();
    let rows: Vec<Vector> = decoded
        .into_iter()
        .map(|entries| {
            let mut v = vec![Rational::zero(); width];
            for (i, c) in entries {
                v[i] = c;
            }
            v
        })
        .collect();
    RatMatrix::from_rows_with_cols(&rows, width).rank()
}

/// `(df)(x,y) = [x, f(y)] - [y, f(x)] - f([x,y])`.
pub fn d1(mu: &LieAlgebra, f: &RatMatrix) -> Cochain2 {
    let dim = mu.dim();
    let mut out = BilinearMap::zero(dim);
    for x in 0..dim {
        for y in x + 1..dim {
            let mut v = dot_bracket(mu.table(), x, &f.column(y));
            let w = dot_bracket(mu.table(), y, &f.column(x));
            let fxy = f.mul_vec(&mu.table().value(x, y));
            for t in 0..dim {
                let c = &v[t] - &w[t] - &fxy[t];
                v[t] = c;
            }
            for (t, c) in v.into_iter().enumerate() {
                out.add_term(x, y, t, c);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unit_vector;

    #[test]
    fn psi_values() {
        let p = psi(7, 1, 4).unwrap();
        assert_eq!(p.value(1, 2), unit_vector(8, 4));
        assert_eq!(p.value(1, 3), unit_vector(8, 5));
        let q = psi(7, 2, 6).unwrap();
        let mut minus_e6 = vec![Rational::zero(); 8];
        minus_e6[6] = rat(-1);
        assert_eq!(q.value(1, 4), minus_e6);
        assert_eq!(q.value(2, 3), unit_vector(8, 6));
        assert!(psi(7, 0, 4).is_err());
        assert!(psi(7, 3, 5).is_err());
    }

    #[test]
    fn psi_is_a_cocycle_and_zero_is_too() {
        let mu = mu0(7);
        assert!(is_cocycle(&mu, &psi(7, 1, 4).unwrap()).unwrap());
        assert!(is_cocycle(&mu, &BilinearMap::zero(8)).unwrap());
        let mut junk = BilinearMap::zero(8);
        junk.add_term(1, 2, 3, rat(1));
        assert!(!is_cocycle(&mu, &junk).unwrap());
    }

    #[test]
    fn psi_respects_weight() {
        for k in 1..4 {
            for s in 2 * k..=8 {
                let p = psi(8, k, s).unwrap();
                for (&(i, j), terms) in p.iter() {
                    for (t, _) in terms {
                        assert_eq!(constant_weight(i, j, *t), psi_weight(k, s));
                    }
                }
            }
        }
    }

    #[test]
    fn coboundaries_are_cocycles() {
        let mu = mu0(6);
        let f = RatMatrix::from_fn(7, 7, |r, c| rat(((r * 3 + c * 5) % 7) as i64 - 3));
        assert!(is_cocycle(&mu, &d1(&mu, &f)).unwrap());
    }

    #[test]
    fn decomposition_round_trip() {
        let terms = vec![PsiTerm::unit(1, 4), PsiTerm::unit(1, 7)];
        let a = deformation(7, &terms).unwrap();
        assert_eq!(decompose_psi(&a).unwrap(), terms);
        assert_eq!(decompose_psi(&mu0(6)).unwrap(), vec![]);
    }

    #[test]
    fn undeformed_algebra_has_both_parities() {
        let a = mu0(7);
        assert!(cn_z2_grading(&a, Z2Decomposition::EvenS).is_ok());
        assert!(cn_z2_grading(&a, Z2Decomposition::OddS).is_ok());
    }

    #[test]
    fn pure_q_pattern_takes_all_three_decompositions() {
        for n in [7, 9, 11] {
            let a = deformation(n, &[PsiTerm::unit((n - 1) / 2, n)]).unwrap();
            for w in [
                Z2Decomposition::QFirst,
                Z2Decomposition::QSecond,
                Z2Decomposition::QThird,
            ] {
                assert!(cn_z2_grading(&a, w).is_ok(), "n = {n}, {w:?}");
            }
        }
    }

    #[test]
    fn second_q_decomposition_breaks_with_more_terms() {
        let a = deformation(9, &[PsiTerm::unit(4, 9), PsiTerm::unit(1, 5)]).unwrap();
        assert!(cn_z2_grading(&a, Z2Decomposition::QFirst).is_ok());
        assert!(cn_z2_grading(&a, Z2Decomposition::QSecond).is_err());
    }

    #[test]
    fn zk_family_is_graded() {
        for k in 3..=5 {
            let a = zk_family(k).unwrap();
            let g = cn_zk_grading(&a, k).unwrap();
            assert_eq!(g.group(), &FGAbelianGroup::cyclic(k as i64));
        }
        assert!(cn_zk_grading(&zk_family(3).unwrap(), 5).is_err());
    }

    #[test]
    fn dim9_family_rejects_poles() {
        assert!(dim9_family(&rat(0)).is_err());
        assert!(dim9_family(&rat(-2)).is_err());
        let a = dim9_family(&rat(1)).unwrap();
        assert!(auto_z2_grading(&a).is_ok());
    }

    #[test]
    fn sill_keeps_lowest_weight() {
        let a = deformation(7, &[PsiTerm::unit(1, 4), PsiTerm::unit(1, 6)]).unwrap();
        let sill = sill_algebra(&a).unwrap();
        assert_eq!(sill, deformation(7, &[PsiTerm::unit(1, 4)]).unwrap());
    }

    #[test]
    fn h2_positive_part_matches_psi_count() {
        for n in 6..=8 {
            let r = h2_weight_dims(n).unwrap();
            assert!(r.independent && r.spans_f1, "n = {n}");
        }
    }
}
