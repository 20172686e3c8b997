//! The filiform algebras of nonzero rank: `L_n`, `Q_n`, `A_n^p(α)` and `B_n^p(α)`.
//!
//! `L_n` and `A_n^p` are built on an adapted basis `X_1..X_n`; `Q_n` and
//! `B_n^p` on a quasi-adapted basis `Y_1..Y_n`, related to an adapted one by
//! `X_1 = Y_1 - Y_2`, `X_i = Y_i`. Indices in this module are one-based to
//! match those names; the returned algebras are zero-based as usual.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::{BilinearMap, LieAlgebra};
use crate::linalg::{rat, RatMatrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelKind {
    L,
    Q,
    A,
    B,
}

impl ModelKind {
    /// Whether the model is stored on a quasi-adapted basis.
    pub fn quasi_adapted(self) -> bool {
        matches!(self, ModelKind::Q | ModelKind::B)
    }

    /// Dimension of the maximal torus.
    pub fn rank(self) -> usize {
        match self {
            ModelKind::L | ModelKind::Q => 2,
            ModelKind::A | ModelKind::B => 1,
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ModelKind::L => "L",
            ModelKind::Q => "Q",
            ModelKind::A => "A",
            ModelKind::B => "B",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for ModelKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L" | "l" => Ok(ModelKind::L),
            "Q" | "q" => Ok(ModelKind::Q),
            "A" | "a" => Ok(ModelKind::A),
            "B" | "b" => Ok(ModelKind::B),
            other => Err(Error::InvalidSpec(format!("unknown model kind {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub n: usize,
    /// Shift parameter; zero for `L` and `Q`.
    pub p: usize,
    pub alphas: Vec<Rational>,
}

impl ModelSpec {
    pub fn l(n: usize) -> Self {
        Self {
            kind: ModelKind::L,
            n,
            p: 0,
            alphas: Vec::new(),
        }
    }

    pub fn q(n: usize) -> Self {
        Self {
            kind: ModelKind::Q,
            n,
            p: 0,
            alphas: Vec::new(),
        }
    }

    pub fn a(n: usize, p: usize, alphas: Vec<Rational>) -> Self {
        Self {
            kind: ModelKind::A,
            n,
            p,
            alphas,
        }
    }

    pub fn b(n: usize, p: usize, alphas: Vec<Rational>) -> Self {
        Self {
            kind: ModelKind::B,
            n,
            p,
            alphas,
        }
    }

    /// `A_n^p` or `B_n^p` with `α_1 = 1` and the remaining parameters zero.
    pub fn with_leading_alpha(kind: ModelKind, n: usize, p: usize) -> Result<Self> {
        let count = alpha_count(kind, n, p)?;
        let mut alphas = vec![Rational::zero(); count];
        if let Some(first) = alphas.first_mut() {
            *first = Rational::one();
        }
        Ok(Self { kind, n, p, alphas })
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        match self.kind {
            ModelKind::L => {
                if n < 3 {
                    return Err(Error::InvalidSpec(format!("L_n needs n >= 3, got {n}")));
                }
            }
            ModelKind::Q => {
                if n < 6 || !n.is_multiple_of(2) {
                    return Err(Error::InvalidSpec(format!("Q_n needs even n >= 6, got {n}")));
                }
            }
            ModelKind::A | ModelKind::B => {
                let count = alpha_count(self.kind, n, self.p)?;
                // A_n^p is conventionally written with one trailing parameter
                // that enters no bracket; accept it.
                let trailing_ok = self.kind == ModelKind::A && self.alphas.len() == count + 1;
                if self.alphas.len() != count && !trailing_ok {
                    return Err(Error::InvalidSpec(format!(
                        "{}_{n}^{} takes {count} parameter(s), got {}",
                        self.kind,
                        self.p,
                        self.alphas.len()
                    )));
                }
            }
        }
        if matches!(self.kind, ModelKind::L | ModelKind::Q) && (self.p != 0 || !self.alphas.is_empty()) {
            return Err(Error::InvalidSpec(format!(
                "{} takes no shift or parameters",
                self.kind
            )));
        }
        Ok(())
    }

    pub fn name(&self) -> String {
        match self.kind {
            ModelKind::L | ModelKind::Q => format!("{}_{}", self.kind, self.n),
            ModelKind::A | ModelKind::B => {
                let alphas: Vec<String> = self.alphas.iter().map(ToString::to_string).collect();
                format!("{}_{}^{}({})", self.kind, self.n, self.p, alphas.join(","))
            }
        }
    }
}

/// Number of free parameters of `A_n^p` / `B_n^p`, after range checks.
pub fn alpha_count(kind: ModelKind, n: usize, p: usize) -> Result<usize> {
    match kind {
        ModelKind::A => {
            if n < 4 || p < 1 || p + 4 > n {
                return Err(Error::InvalidSpec(format!(
                    "A_n^p needs n >= 4 and 1 <= p <= n-4, got n={n}, p={p}"
                )));
            }
            Ok((n - p) / 2 - 1)
        }
        ModelKind::B => {
            if n < 6 || !n.is_multiple_of(2) || p < 1 || p + 5 > n {
                return Err(Error::InvalidSpec(format!(
                    "B_n^p needs even n >= 6 and 1 <= p <= n-5, got n={n}, p={p}"
                )));
            }
            Ok((n - p - 3) / 2)
        }
        ModelKind::L | ModelKind::Q => Ok(0),
    }
}

/// The coefficients `a_{i,j}` with `a_{i,i} = 0`, `a_{i,i+1} = α_i` and
/// `a_{i,j} = a_{i+1,j} + a_{i,j+1}`, on `1 <= i <= j`, `i + j <= max_sum`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    max_sum: usize,
    values: BTreeMap<(usize, usize), Rational>,
}

impl CoeffTable {
    pub fn get(&self, i: usize, j: usize) -> Option<&Rational> {
        self.values.get(&(i, j))
    }

    pub fn max_sum(&self) -> usize {
        self.max_sum
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.values.iter()
    }
}

/// Solves the `a_{i,j}` recursion for `A_n^p` or `B_n^p`.
///
/// The recursion at `(i, j-1)` gives `a_{i,j} = a_{i,j-1} - a_{i+1,j-1}`, so the
/// table fills in by increasing `j - i` from the boundary values.
pub fn coeff_table(kind: ModelKind, n: usize, p: usize, alphas: &[Rational]) -> Result<CoeffTable> {
    let count = alpha_count(kind, n, p)?;
    if !matches!(kind, ModelKind::A | ModelKind::B) {
        return Err(Error::InvalidSpec(format!("{kind} has no coefficient table")));
    }
    let trailing_ok = kind == ModelKind::A && alphas.len() == count + 1;
    if alphas.len() != count && !trailing_ok {
        return Err(Error::InvalidSpec(format!(
            "expected {count} parameter(s), got {}",
            alphas.len()
        )));
    }
    // bracket ranges i + j <= n - p + 1 (A) and i + j <= n - p (B), shifted by one
    let max_sum = match kind {
        ModelKind::A => n - p - 1,
        _ => n - p - 2,
    };
    let mut values = BTreeMap::new();
    for i in 1..=max_sum / 2 {
        values.insert((i, i), Rational::zero());
    }
    for i in 1.. {
        if 2 * i + 1 > max_sum {
            break;
        }
        values.insert((i, i + 1), alphas[i - 1].clone());
    }
    for gap in 2..max_sum {
        for i in 1.. {
            let j = i + gap;
            if i + j > max_sum {
                break;
            }
            let v = &values[&(i, j - 1)] - &values[&(i + 1, j - 1)];
            values.insert((i, j), v);
        }
    }
    Ok(CoeffTable { max_sum, values })
}

/// Builds the algebra of a model specification. Kinds `Q` and `B` come back
/// on their quasi-adapted basis.
pub fn make_model(spec: &ModelSpec) -> Result<LieAlgebra> {
    spec.validate()?;
    let n = spec.n;
    let mut t = BilinearMap::zero(n);
    // one-based helper
    let mut put = |i: usize, j: usize, k: usize, c: Rational| t.add_term(i - 1, j - 1, k - 1, c);
    let top_thread = if spec.kind.quasi_adapted() { n - 2 } else { n - 1 };
    for i in 2..=top_thread {
        put(1, i, i + 1, rat(1));
    }
    if spec.kind.quasi_adapted() {
        for i in 2..=n / 2 {
            let sign = if i % 2 == 0 { -1 } else { 1 };
            put(i, n - i + 1, n, rat(sign));
        }
    }
    if matches!(spec.kind, ModelKind::A | ModelKind::B) {
        let table = coeff_table(spec.kind, n, spec.p, &spec.alphas)?;
        let p = spec.p;
        let bound = match spec.kind {
            ModelKind::A => n - p + 1,
            _ => n - p,
        };
        for i in 2..n {
            for j in i + 1..=n {
                if i + j > bound {
                    break;
                }
                let c = table.get(i - 1, j - 1).expect("coefficient in range").clone();
                put(i, j, i + j + p - 1, c);
            }
        }
    }
    let prefix = if spec.kind.quasi_adapted() { "Y" } else { "X" };
    LieAlgebra::with_prefix(t, prefix, 1)
}

/// Basis change from a quasi-adapted basis to an adapted one: the identity
/// except `X_1 = Y_1 - Y_2`. Returns the identity when the input already
/// satisfies the adapted-basis conditions.
pub fn quasi_to_adapted(a: &LieAlgebra) -> Result<RatMatrix> {
    let n = a.dim();
    let identity = RatMatrix::identity(n);
    if adapted_basis_alpha(a).is_ok() {
        return Ok(identity);
    }
    let mut change = identity;
    if n >= 2 {
        change[(1, 0)] = rat(-1);
    }
    let converted = a.change_basis(&change, adapted_labels(n))?;
    adapted_basis_alpha(&converted).map_err(Error::Precondition)?;
    Ok(change)
}

fn adapted_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("X{i}")).collect()
}

/// Checks the adapted-basis conditions and returns the scalar `α` with
/// `[X_i, X_{n-i+1}] = (-1)^{i+1} α X_n`:
///
/// * `[X_1, X_i] = X_{i+1}` for `2 <= i <= n-1`;
/// * `[X_2, X_3]` lies in the span of `X_5, ..., X_n`;
/// * `[X_i, X_{n-i+1}] = (-1)^{i+1} α X_n`, with `α = 0` for odd `n`;
/// * `g^i` is spanned by `X_{i+1}, ..., X_n` for `i >= 2`.
pub fn adapted_basis_alpha(a: &LieAlgebra) -> std::result::Result<Rational, String> {
    let n = a.dim();
    if n < 4 {
        return Err("adapted bases are considered for n >= 4".into());
    }
    let e = |i: usize| crate::linalg::unit_vector(n, i - 1);
    for i in 2..n {
        if a.basis_bracket(0, i - 1) != e(i + 1) {
            return Err(format!("[X1, X{i}] != X{}", i + 1));
        }
    }
    let b23 = a.basis_bracket(1, 2);
    if b23.iter().take(4).any(|c| !c.is_zero()) {
        return Err("[X2, X3] leaves span(X5..Xn)".into());
    }
    let mut alpha: Option<Rational> = None;
    for i in 2..=n / 2 {
        let j = n - i + 1;
        if j <= i {
            break;
        }
        let v = a.basis_bracket(i - 1, j - 1);
        if v[..n - 1].iter().any(|c| !c.is_zero()) {
            return Err(format!("[X{i}, X{j}] is not a multiple of X{n}"));
        }
        let sign = if i % 2 == 0 { rat(-1) } else { rat(1) };
        let candidate = &v[n - 1] * &sign;
        match &alpha {
            None => alpha = Some(candidate),
            Some(prev) if *prev != candidate => return Err(format!("sign pattern breaks at [X{i}, X{j}]")),
            _ => {}
        }
    }
    let alpha = alpha.unwrap_or_else(Rational::zero);
    if n % 2 == 1 && !alpha.is_zero() {
        return Err("odd dimension requires α = 0".into());
    }
    let series = a.lower_central_series();
    for i in 2..n {
        let expected = crate::linalg::Subspace::coordinate(n, &(i..n).collect::<Vec<_>>());
        if series.get(i - 1) != Some(&expected) {
            return Err(format!("g^{i} is not spanned by X{}..X{n}", i + 1));
        }
    }
    Ok(alpha)
}

/// Element `φ_{u,t}` of the standard maximal torus as a diagonal matrix on
/// the model's own basis. For kinds `A`, `B` the second parameter is forced
/// to `u^{p+1}` and `t` is ignored.
pub fn torus_element(spec: &ModelSpec, u: &Rational, t: &Rational) -> Result<RatMatrix> {
    spec.validate()?;
    let n = spec.n;
    let t = match spec.kind {
        ModelKind::L | ModelKind::Q => t.clone(),
        _ => num_traits::pow(u.clone(), spec.p + 1),
    };
    let mut m = RatMatrix::zeros(n, n);
    m[(0, 0)] = u.clone();
    for i in 2..=n {
        m[(i - 1, i - 1)] = num_traits::pow(u.clone(), i - 2) * &t;
    }
    if spec.kind.quasi_adapted() {
        // Y_n = [Y_2, Y_{n-1}] up to sign: weight u^{n-3} t^2
        m[(n - 1, n - 1)] = num_traits::pow(u.clone(), n - 3) * &t * &t;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ratio, unit_vector};

    #[test]
    fn l5_table() {
        let a = make_model(&ModelSpec::l(5)).unwrap();
        assert_eq!(a.table().len(), 3);
        for i in 1..4 {
            assert_eq!(a.basis_bracket(0, i), unit_vector(5, i + 1));
        }
    }

    #[test]
    fn q6_table() {
        let a = make_model(&ModelSpec::q(6)).unwrap();
        assert_eq!(a.table().len(), 5);
        let mut minus_y6 = unit_vector(6, 5);
        minus_y6[5] = rat(-1);
        assert_eq!(a.basis_bracket(1, 4), minus_y6);
        assert_eq!(a.basis_bracket(2, 3), unit_vector(6, 5));
        // the thread stops at [Y1, Y4] = Y5
        assert!(crate::linalg::is_zero_vector(&a.basis_bracket(0, 4)));
    }

    #[test]
    fn zero_parameters_give_l() {
        let a = make_model(&ModelSpec::a(6, 1, vec![rat(0)])).unwrap();
        assert_eq!(a.table(), make_model(&ModelSpec::l(6)).unwrap().table());
    }

    #[test]
    fn trailing_a_parameter_is_inert() {
        let short = make_model(&ModelSpec::a(6, 1, vec![rat(1)])).unwrap();
        let long = make_model(&ModelSpec::a(6, 1, vec![rat(1), rat(0)])).unwrap();
        assert_eq!(short.table(), long.table());
        assert!(ModelSpec::b(8, 1, vec![rat(1), rat(-2), rat(0)])
            .validate()
            .is_err());
    }

    #[test]
    fn coeff_table_zero_and_leading() {
        let z = coeff_table(ModelKind::A, 9, 1, &[rat(0), rat(0), rat(0)]).unwrap();
        assert!(z.iter().all(|(_, v)| v.is_zero()));
        let t = coeff_table(ModelKind::A, 9, 1, &[rat(1), rat(0), rat(0)]).unwrap();
        assert_eq!(t.get(1, 2), Some(&rat(1)));
        assert_eq!(t.get(2, 3), Some(&rat(0)));
        assert_eq!(t.get(1, 1), Some(&rat(0)));
    }

    #[test]
    fn coeff_table_satisfies_recursion() {
        let t = coeff_table(ModelKind::A, 12, 1, &[rat(2), ratio(-1, 3), rat(5), rat(7)]).unwrap();
        for (&(i, j), v) in t.iter() {
            if let (Some(a), Some(b)) = (t.get(i + 1, j), t.get(i, j + 1)) {
                assert_eq!(v, &(a + b), "recursion at ({i},{j})");
            }
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(ModelSpec::l(2).validate().is_err());
        assert!(ModelSpec::q(7).validate().is_err());
        assert!(ModelSpec::q(4).validate().is_err());
        assert!(ModelSpec::a(6, 3, vec![]).validate().is_err());
        assert!(ModelSpec::a(6, 1, vec![rat(1), rat(2), rat(3)])
            .validate()
            .is_err());
        assert!(ModelSpec::b(8, 4, vec![]).validate().is_err());
        assert!(make_model(&ModelSpec::b(7, 1, vec![rat(1)])).is_err());
    }

    #[test]
    fn quasi_adapted_conversion() {
        let q = make_model(&ModelSpec::q(6)).unwrap();
        let change = quasi_to_adapted(&q).unwrap();
        let x = q.change_basis(&change, adapted_labels(6)).unwrap();
        for i in 1..5 {
            assert_eq!(x.basis_bracket(0, i), unit_vector(6, i + 1));
        }
        assert_eq!(adapted_basis_alpha(&x), Ok(rat(1)));
        let l = make_model(&ModelSpec::l(7)).unwrap();
        assert_eq!(quasi_to_adapted(&l).unwrap(), RatMatrix::identity(7));
    }

    #[test]
    fn torus_elements_are_automorphisms() {
        for spec in [ModelSpec::l(6), ModelSpec::q(8)] {
            let a = make_model(&spec).unwrap();
            let phi = torus_element(&spec, &rat(2), &ratio(-1, 3)).unwrap();
            assert!(a.is_automorphism(&phi), "{}", spec.name());
        }
    }
}
