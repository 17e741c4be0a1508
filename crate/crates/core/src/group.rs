//! The simply connected nilpotent Lie group of a [`LieAlgebraSpec`], in
//! Mal'cev coordinates of the second kind.
//!
//! An element with coordinates `t` is `Π_a exp(t_a X_a)`, the product taken
//! in basis order. The group law is a polynomial map computed once, when the
//! group is built, by symbolic BCH; numeric operations then only evaluate
//! polynomials.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::exact::{vars, Coefficient, ElemDegree, MultiPoly, Rational, Vars};
use crate::lie::{same_algebra, validate, BchSeries, LieAlgebraSpec, LieElement};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("expected {expected} coordinates, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("invalid Lie algebra: {0}")]
    InvalidSpec(String),
}

/// Coordinates of `(s-element) · (t-element)` as polynomials in the
/// variables `s_a` followed by `t_a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicMul {
    vars: Vars,
    components: Vec<MultiPoly>,
}

impl SymbolicMul {
    /// `s{i}_{j}` for the left factor, then `t{i}_{j}` for the right.
    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }
}

#[derive(Debug)]
struct Inner {
    spec: Arc<LieAlgebraSpec>,
    coord_vars: Vars,
    mul: SymbolicMul,
    inv: Vec<MultiPoly>,
    log: Vec<MultiPoly>,
    exp: Vec<MultiPoly>,
}

/// A group together with its cached symbolic group law. Cheap to clone.
#[derive(Debug, Clone)]
pub struct Group {
    inner: Arc<Inner>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || same_algebra(&self.inner.spec, &other.inner.spec)
    }
}

impl Eq for Group {}

/// `{prefix}{i}_{j}` for every basis label.
pub fn label_vars(spec: &LieAlgebraSpec, prefix: &str, suffix: &str) -> Vars {
    let names: Vec<String> =
        spec.labels().iter().map(|l| format!("{prefix}{}_{}{suffix}", l.level, l.index)).collect();
    vars(&names)
}

fn apply_bch(spec: &LieAlgebraSpec, x: &[MultiPoly], y: &[MultiPoly]) -> Vec<MultiPoly> {
    BchSeries::for_class(spec.class()).apply(spec, x, y)
}

fn one_param(spec: &LieAlgebraSpec, a: usize, c: &MultiPoly) -> Vec<MultiPoly> {
    let mut v = vec![c.zero_like(); spec.dim()];
    v[a] = c.clone();
    v
}

/// First-kind coordinates of `Π exp(t_a X_a)` as polynomials in `t`.
fn symbolic_log(spec: &LieAlgebraSpec, t: &[MultiPoly]) -> Vec<MultiPoly> {
    let n = spec.dim();
    let mut cur = one_param(spec, 0, &t[0]);
    for a in 1..n {
        cur = apply_bch(spec, &cur, &one_param(spec, a, &t[a]));
    }
    cur
}

/// Second-kind coordinates of `exp(Σ u_a X_a)` as polynomials in `u`.
///
/// Peels factors off the front: the `X_a` coefficient of `log` of the
/// remaining product is `t_a`, because every bracket involving later basis
/// vectors lands strictly above the level of `X_a`.
fn symbolic_exp(spec: &LieAlgebraSpec, u: &[MultiPoly]) -> Vec<MultiPoly> {
    let n = spec.dim();
    let mut cur = u.to_vec();
    let mut out = Vec::with_capacity(n);
    for a in 0..n {
        let ta = cur[a].clone();
        if a + 1 < n {
            cur = apply_bch(spec, &one_param(spec, a, &ta.negated()), &cur);
        }
        out.push(ta);
    }
    out
}

impl Group {
    /// Validates the algebra and builds the symbolic group law.
    pub fn new(spec: LieAlgebraSpec) -> Result<Group, GroupError> {
        let report = validate(&spec);
        if !report.all_passed() {
            return Err(GroupError::InvalidSpec(report.failures().join("; ")));
        }
        Ok(Self::from_valid(Arc::new(spec)))
    }

    /// Builds the group without validating; the caller vouches for the table.
    pub fn from_valid(spec: Arc<LieAlgebraSpec>) -> Group {
        let n = spec.dim();
        let coord_vars = label_vars(&spec, "z", "");
        let (log, exp, inv, mul) = if n == 0 {
            let v = vars::<&str>(&[]);
            (Vec::new(), Vec::new(), Vec::new(), SymbolicMul { vars: v, components: Vec::new() })
        } else {
            let t: Vec<MultiPoly> = (0..n).map(|a| MultiPoly::var(&coord_vars, a)).collect();
            let log = symbolic_log(&spec, &t);
            let exp = symbolic_exp(&spec, &t);
            let neg_log: Vec<MultiPoly> = log.iter().map(MultiPoly::negated).collect();
            let inv = compose(&exp, &neg_log, &coord_vars);

            let mut names: Vec<String> = Vec::with_capacity(2 * n);
            names.extend(spec.labels().iter().map(|l| format!("s{}_{}", l.level, l.index)));
            names.extend(spec.labels().iter().map(|l| format!("t{}_{}", l.level, l.index)));
            let mv = vars(&names);
            let left: Vec<usize> = (0..n).collect();
            let right: Vec<usize> = (n..2 * n).collect();
            let ls: Vec<MultiPoly> = log.iter().map(|p| p.embed(&mv, &left)).collect();
            let lt: Vec<MultiPoly> = log.iter().map(|p| p.embed(&mv, &right)).collect();
            let joint = apply_bch(&spec, &ls, &lt);
            let components = compose(&exp, &joint, &mv);
            (log, exp, inv, SymbolicMul { vars: mv, components })
        };
        Group { inner: Arc::new(Inner { spec, coord_vars, mul, inv, log, exp }) }
    }

    pub fn spec(&self) -> &Arc<LieAlgebraSpec> {
        &self.inner.spec
    }

    pub fn dim(&self) -> usize {
        self.inner.spec.dim()
    }

    pub fn symbolic_mul(&self) -> &SymbolicMul {
        &self.inner.mul
    }

    /// Coordinates of the inverse as polynomials in [`Group::coord_vars`].
    pub fn symbolic_inv(&self) -> &[MultiPoly] {
        &self.inner.inv
    }

    /// First-kind coordinates as polynomials in the second-kind ones.
    pub fn symbolic_log(&self) -> &[MultiPoly] {
        &self.inner.log
    }

    /// Second-kind coordinates as polynomials in the first-kind ones.
    pub fn symbolic_exp(&self) -> &[MultiPoly] {
        &self.inner.exp
    }

    /// `z{i}_{j}`, one per basis label.
    pub fn coord_vars(&self) -> &Vars {
        &self.inner.coord_vars
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { group: self.clone(), coords: vec![Rational::zero(); self.dim()] }
    }

    pub fn element(&self, coords: Vec<Rational>) -> Result<GroupElement, GroupError> {
        if coords.len() != self.dim() {
            return Err(GroupError::WrongLength { expected: self.dim(), found: coords.len() });
        }
        Ok(GroupElement { group: self.clone(), coords })
    }

    /// `exp(X_a)`.
    pub fn basis_element(&self, a: usize) -> GroupElement {
        let mut e = self.identity();
        e.coords[a] = Rational::one();
        e
    }

    /// `exp(c X_a)`.
    pub fn one_parameter(&self, a: usize, c: Rational) -> GroupElement {
        let mut e = self.identity();
        e.coords[a] = c;
        e
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        self.check(b)?;
        let point: Vec<Rational> = a.coords.iter().chain(&b.coords).cloned().collect();
        let coords = self.inner.mul.components.iter().map(|p| p.evaluate(&point)).collect();
        Ok(GroupElement { group: self.clone(), coords })
    }

    pub fn inv(&self, a: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        let coords = self.inner.inv.iter().map(|p| p.evaluate(&a.coords)).collect();
        Ok(GroupElement { group: self.clone(), coords })
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        let ai = self.inv(a)?;
        let bi = self.inv(b)?;
        let left = self.mul(&ai, &bi)?;
        let right = self.mul(a, b)?;
        self.mul(&left, &right)
    }

    /// `exp(t log a)`.
    pub fn pow(&self, a: &GroupElement, t: &Rational) -> Result<GroupElement, GroupError> {
        let x = self.first_kind(a)?;
        Ok(self.second_kind(&x.scale(t)))
    }

    pub fn first_kind(&self, a: &GroupElement) -> Result<LieElement, GroupError> {
        self.check(a)?;
        let coeffs = self.inner.log.iter().map(|p| p.evaluate(&a.coords)).collect();
        Ok(LieElement::new(self.inner.spec.clone(), coeffs))
    }

    /// The element `exp(x)`. Panics if `x` lives in another algebra.
    pub fn second_kind(&self, x: &LieElement) -> GroupElement {
        assert!(same_algebra(x.algebra(), &self.inner.spec), "Lie element from another algebra");
        let coords = self.inner.exp.iter().map(|p| p.evaluate(x.coeffs())).collect();
        GroupElement { group: self.clone(), coords }
    }

    /// Largest `i` with `a ∈ G_[i]`: the lowest level carrying a nonzero
    /// coordinate. The identity lies in every term.
    pub fn elem_degree(&self, a: &GroupElement) -> ElemDegree {
        let spec = &self.inner.spec;
        a.coords
            .iter()
            .position(|c| !c.is_zero())
            .map_or(ElemDegree::Infinite, |k| ElemDegree::Finite(spec.level(k) as u32))
    }

    fn check(&self, a: &GroupElement) -> Result<(), GroupError> {
        if a.group == *self {
            Ok(())
        } else {
            Err(GroupError::GroupMismatch)
        }
    }
}

/// `outer_a(inner)` for each component; `inner` lives over `target`.
fn compose(outer: &[MultiPoly], inner: &[MultiPoly], target: &Vars) -> Vec<MultiPoly> {
    outer.iter().map(|p| p.substitute(inner, target).expect("consistent variable lists")).collect()
}

/// A point of the group, in second-kind coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    group: Group,
    coords: Vec<Rational>,
}

impl GroupElement {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement, GroupError> {
        self.group.mul(self, other)
    }

    pub fn inv(&self) -> GroupElement {
        self.group.inv(self).expect("element belongs to its own group")
    }

    pub fn pow(&self, t: &Rational) -> GroupElement {
        self.group.pow(self, t).expect("element belongs to its own group")
    }

    pub fn degree(&self) -> ElemDegree {
        self.group.elem_degree(self)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(crate::exact::format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exact::{int, rat, Matrix};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn heis() -> Group {
        Group::new(corpus::heisenberg()).unwrap()
    }

    fn el(g: &Group, c: &[i64]) -> GroupElement {
        g.element(c.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn heisenberg_law() {
        let g = heis();
        let m = g.symbolic_mul();
        assert_eq!(m.components()[0].to_string(), "s1_1 + t1_1");
        assert_eq!(m.components()[1].to_string(), "s1_2 + t1_2");
        let v = m.vars().clone();
        let want = &(&MultiPoly::var(&v, 2) + &MultiPoly::var(&v, 5))
            - &(&MultiPoly::var(&v, 1) * &MultiPoly::var(&v, 3));
        assert_eq!(m.components()[2], want);
        assert_eq!(el(&g, &[1, 0, 0]).mul(&el(&g, &[0, 1, 0])).unwrap(), el(&g, &[1, 1, 0]));
        assert_eq!(el(&g, &[0, 1, 0]).mul(&el(&g, &[1, 0, 0])).unwrap(), el(&g, &[1, 1, -1]));
    }

    #[test]
    fn abelian_law() {
        let g = Group::new(corpus::abelian(2)).unwrap();
        let m = g.symbolic_mul();
        assert_eq!(m.components()[0].to_string(), "s1_1 + t1_1");
        assert_eq!(m.components()[1].to_string(), "s1_2 + t1_2");
    }

    #[test]
    fn identity_laws_are_symbolic() {
        for spec in [corpus::unitriangular(4), corpus::free(2, 3)] {
            let g = Group::new(spec).unwrap();
            let n = g.dim();
            let m = g.symbolic_mul();
            let zeros = vec![Rational::zero(); n];
            let cv = g.coord_vars().clone();
            for (a, p) in m.components().iter().enumerate() {
                assert_eq!(p.fix_tail(n, &zeros, &cv), MultiPoly::var(&cv, a));
                assert_eq!(p.fix_head(&zeros, &cv), MultiPoly::var(&cv, a));
            }
        }
    }

    #[test]
    fn degree_bound_per_block() {
        let g = Group::new(corpus::unitriangular(5)).unwrap();
        let n = g.dim();
        let w = g.spec().weights();
        let mut left = w.clone();
        left.extend(vec![0; n]);
        let mut right = vec![0; n];
        right.extend(w.iter().copied());
        for (a, p) in g.symbolic_mul().components().iter().enumerate() {
            let lvl = g.spec().level(a) as u32;
            assert!(p.weighted_degree(&left).at_most(lvl));
            assert!(p.weighted_degree(&right).at_most(lvl));
        }
    }

    #[test]
    fn commutators_and_powers() {
        let g = heis();
        let x = g.basis_element(0);
        let y = g.basis_element(1);
        assert_eq!(g.commutator(&x, &y).unwrap(), el(&g, &[0, 0, 1]));
        let (a, b) = (rat(2, 3), rat(-5, 7));
        let c = g.commutator(&x.pow(&a), &y.pow(&b)).unwrap();
        assert_eq!(c, g.basis_element(2).pow(&(&a * &b)));
        assert!(g.identity().inv().is_identity());
    }

    #[test]
    fn first_kind_examples() {
        let g = heis();
        let fk = g.first_kind(&el(&g, &[1, 1, 0])).unwrap();
        assert_eq!(fk.coeffs(), &[int(1), int(1), rat(1, 2)]);
        assert!(g.first_kind(&g.identity()).unwrap().is_zero());
    }

    #[test]
    fn elem_degrees() {
        let g = heis();
        assert_eq!(g.basis_element(2).degree(), ElemDegree::Finite(2));
        assert_eq!(g.basis_element(0).degree(), ElemDegree::Finite(1));
        assert_eq!(g.identity().degree(), ElemDegree::Infinite);
    }

    #[test]
    fn mismatch_and_length() {
        let g = heis();
        let h = Group::new(corpus::abelian(3)).unwrap();
        assert_eq!(g.mul(&g.identity(), &h.identity()).unwrap_err(), GroupError::GroupMismatch);
        assert!(matches!(g.element(vec![int(1)]), Err(GroupError::WrongLength { .. })));
    }

    fn random_rat(rng: &mut ChaCha8Rng) -> Rational {
        rat(rng.random_range(-9..=9), rng.random_range(1..=4))
    }

    fn random_el(g: &Group, rng: &mut ChaCha8Rng) -> GroupElement {
        g.element((0..g.dim()).map(|_| random_rat(rng)).collect()).unwrap()
    }

    // U_n element Π (I + t_a E_a) in basis order
    fn to_matrix(n: usize, coords: &[Rational]) -> Matrix {
        let mut m = Matrix::identity(n);
        for (&(a, b), t) in corpus::unitriangular_units(n).iter().zip(coords) {
            let mut f = Matrix::identity(n);
            f[(a, b)] = t.clone();
            m = m.mul(&f);
        }
        m
    }

    fn from_matrix(n: usize, m: &Matrix) -> Vec<Rational> {
        let mut cur = m.clone();
        let mut out = Vec::new();
        for &(a, b) in &corpus::unitriangular_units(n) {
            let t = cur[(a, b)].clone();
            let mut f = Matrix::identity(n);
            f[(a, b)] = -t.clone();
            cur = f.mul(&cur);
            out.push(t);
        }
        out
    }

    #[test]
    fn matrix_oracle_u3_to_u5() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 3..=5 {
            let g = Group::new(corpus::unitriangular(n)).unwrap();
            for _ in 0..20 {
                let a = random_el(&g, &mut rng);
                let b = random_el(&g, &mut rng);
                let (ma, mb) = (to_matrix(n, a.coords()), to_matrix(n, b.coords()));
                assert_eq!(from_matrix(n, &to_matrix(n, a.coords())), a.coords());
                assert_eq!(a.mul(&b).unwrap().coords(), from_matrix(n, &ma.mul(&mb)));
                assert_eq!(a.inv().coords(), from_matrix(n, &ma.inverse().unwrap()));
            }
        }
    }

    #[test]
    fn group_axioms_and_powers() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = Group::new(corpus::free(2, 3)).unwrap();
        for _ in 0..20 {
            let a = random_el(&g, &mut rng);
            let b = random_el(&g, &mut rng);
            let c = random_el(&g, &mut rng);
            let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
            let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
            assert_eq!(ab_c, a_bc);
            assert!(a.mul(&a.inv()).unwrap().is_identity());
            assert_eq!(g.second_kind(&g.first_kind(&a).unwrap()), a);
            let (s, t) = (random_rat(&mut rng), random_rat(&mut rng));
            assert_eq!(a.pow(&(&s + &t)), a.pow(&s).mul(&a.pow(&t)).unwrap());
            assert_eq!(a.pow(&int(1)), a);
            assert!(a.pow(&int(0)).is_identity());
            let cube = a.mul(&a).unwrap().mul(&a).unwrap();
            assert_eq!(a.pow(&int(3)), cube);
        }
    }
}
