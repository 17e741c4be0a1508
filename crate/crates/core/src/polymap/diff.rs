use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::One;

use super::{PolyMap, PolyMapError};
use crate::exact::{Degree, EchelonBasis, Monomial, MultiPoly, Rational};
use crate::group::{Group, GroupElement};

/// Which side the translating element acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `∂̸_g ξ (h) = ξ(hg) - ξ(h)`
    Right,
    /// `∂_g ξ (h) = ξ(g⁻¹h) - ξ(h)`
    Left,
}

/// Differences along a fixed list of group elements, memoizing the
/// translates of every monomial it meets.
#[derive(Debug)]
pub struct DiffEngine {
    group: Group,
    images: Vec<Vec<MultiPoly>>,
    memo: Vec<HashMap<Monomial, MultiPoly>>,
}

impl DiffEngine {
    pub fn new(group: &Group, elements: &[GroupElement], side: Side) -> Result<Self, PolyMapError> {
        let n = group.dim();
        let vars = group.coord_vars();
        let mul = group.symbolic_mul().components();
        let mut images = Vec::with_capacity(elements.len());
        for g in elements {
            if g.group() != group {
                return Err(PolyMapError::GroupMismatch);
            }
            let img = match side {
                Side::Right => mul.iter().map(|p| p.fix_tail(n, g.coords(), vars)).collect(),
                Side::Left => {
                    let gi = g.inv();
                    mul.iter().map(|p| p.fix_head(gi.coords(), vars)).collect()
                }
            };
            images.push(img);
        }
        let memo = vec![HashMap::new(); elements.len()];
        Ok(DiffEngine { group: group.clone(), images, memo })
    }

    /// Differences along the level-1 basis elements.
    pub fn generators(group: &Group, side: Side) -> Self {
        let gens: Vec<GroupElement> = group.spec().generators().map(|a| group.basis_element(a)).collect();
        Self::new(group, &gens, side).expect("generators belong to the group")
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    fn translate_monomial(&mut self, k: usize, m: &Monomial) -> MultiPoly {
        if let Some(p) = self.memo[k].get(m) {
            return p.clone();
        }
        let vars = self.group.coord_vars().clone();
        let p = match m.exps().iter().position(|&e| e > 0) {
            None => MultiPoly::one(&vars),
            Some(i) => {
                let mut e = m.exps().to_vec();
                e[i] -= 1;
                let rest = self.translate_monomial(k, &Monomial::new(e));
                &rest * &self.images[k][i]
            }
        };
        self.memo[k].insert(m.clone(), p.clone());
        p
    }

    /// `ξ` translated by element `k`, minus `ξ`, on a raw body.
    pub fn diff_body(&mut self, k: usize, body: &MultiPoly) -> MultiPoly {
        let mut out = body.scale(&-Rational::one());
        for (m, c) in body.terms() {
            let t = self.translate_monomial(k, m);
            out.add_scaled(&t, c);
        }
        out
    }

    pub fn diff(&mut self, k: usize, xi: &PolyMap) -> Result<PolyMap, PolyMapError> {
        if xi.group() != &self.group {
            return Err(PolyMapError::GroupMismatch);
        }
        let body = self.diff_body(k, xi.body());
        Ok(PolyMap::from_body(&self.group, body))
    }

    /// Number of rounds `r ≤ max_rounds` after which every `r`-fold
    /// difference of `ξ` along the engine's elements vanishes, or `None`.
    pub fn rounds_to_vanish(&mut self, xi: &PolyMap, max_rounds: usize) -> Option<usize> {
        let mut span: Vec<MultiPoly> = if xi.is_zero() { Vec::new() } else { vec![xi.body().clone()] };
        for r in 0..=max_rounds {
            if span.is_empty() {
                return Some(r);
            }
            if r == max_rounds {
                break;
            }
            let mut ech: EchelonBasis<Monomial> = EchelonBasis::new();
            let mut next = Vec::new();
            for v in &span {
                for k in 0..self.len() {
                    let d = self.diff_body(k, v);
                    let key: BTreeMap<Monomial, Rational> = d.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
                    if ech.insert(key) {
                        next.push(d);
                    }
                }
            }
            span = next;
        }
        None
    }
}

pub fn right_diff(xi: &PolyMap, g: &GroupElement) -> Result<PolyMap, PolyMapError> {
    DiffEngine::new(xi.group(), std::slice::from_ref(g), Side::Right)?.diff(0, xi)
}

pub fn left_diff(xi: &PolyMap, g: &GroupElement) -> Result<PolyMap, PolyMapError> {
    DiffEngine::new(xi.group(), std::slice::from_ref(g), Side::Left)?.diff(0, xi)
}

/// `∂_g ξ - (∂_g ξ)(𝟙)`.
pub fn unitized_diff(xi: &PolyMap, g: &GroupElement) -> Result<PolyMap, PolyMapError> {
    let d = left_diff(xi, g)?;
    let c = d.at_identity();
    d.sub(&PolyMap::constant(xi.group(), c))
}

fn verify_with(xi: &PolyMap, d: Degree, side: Side) -> bool {
    let rounds = match d {
        Degree::NegInfinity => return xi.is_zero(),
        Degree::Finite(d) => d as usize + 1,
    };
    DiffEngine::generators(xi.group(), side).rounds_to_vanish(xi, rounds).is_some()
}

/// Whether every `(d+1)`-fold right difference of `ξ` along the level-1
/// generators vanishes. Generators suffice because
/// `∂̸_{gh} = ∂̸_g ∂̸_h + ∂̸_g + ∂̸_h`.
pub fn verify_degree(xi: &PolyMap, d: Degree) -> bool {
    verify_with(xi, d, Side::Right)
}

/// As [`verify_degree`], with left differences.
pub fn verify_degree_left(xi: &PolyMap, d: Degree) -> bool {
    verify_with(xi, d, Side::Left)
}

/// Degree of `ξ` found purely from differences: one less than the number of
/// difference rounds needed to reach zero. Gives up after `max` rounds.
pub fn degree_by_differences(xi: &PolyMap, max: usize) -> Option<Degree> {
    let r = DiffEngine::generators(xi.group(), Side::Right).rounds_to_vanish(xi, max)?;
    Some(if r == 0 { Degree::NegInfinity } else { Degree::Finite(r as u32 - 1) })
}

/// `ξ(𝟙) = η(𝟙)` and equal right differences along every level-1 generator.
pub fn determined_by_diffs(xi: &PolyMap, eta: &PolyMap) -> Result<bool, PolyMapError> {
    if xi.group() != eta.group() {
        return Err(PolyMapError::GroupMismatch);
    }
    if xi.at_identity() != eta.at_identity() {
        return Ok(false);
    }
    let mut eng = DiffEngine::generators(xi.group(), Side::Right);
    for k in 0..eng.len() {
        if eng.diff(k, xi)? != eng.diff(k, eta)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of comparing two polynomial maps symbolically and on a word ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallCheck {
    pub symbolic_equal: bool,
    pub agree_on_ball: bool,
    /// A ball element where the two maps differ.
    pub witness: Option<GroupElement>,
    pub ball_size: usize,
}

/// Words of length `≤ d` in the level-1 generators and their inverses.
pub fn word_ball(group: &Group, d: usize) -> Vec<GroupElement> {
    let mut letters = Vec::new();
    for a in group.spec().generators() {
        let g = group.basis_element(a);
        letters.push(g.inv());
        letters.push(g);
    }
    let mut seen: HashSet<Vec<Rational>> = HashSet::new();
    let id = group.identity();
    seen.insert(id.coords().to_vec());
    let mut all = vec![id.clone()];
    let mut frontier = vec![id];
    for _ in 0..d {
        let mut next = Vec::new();
        for w in &frontier {
            for l in &letters {
                let p = w.mul(l).expect("same group");
                if seen.insert(p.coords().to_vec()) {
                    next.push(p);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

/// Compares `ξ` and `η` (both of degree `≤ d`) symbolically and on the word
/// ball of radius `d`.
pub fn determined_on_ball(xi: &PolyMap, eta: &PolyMap, d: u32) -> Result<BallCheck, PolyMapError> {
    if xi.group() != eta.group() {
        return Err(PolyMapError::GroupMismatch);
    }
    for p in [xi, eta] {
        if !p.degree().at_most(d) {
            return Err(PolyMapError::Precondition(format!("degree {} exceeds {d}", p.degree())));
        }
    }
    let ball = word_ball(xi.group(), d as usize);
    let mut witness = None;
    for g in &ball {
        if xi.evaluate(g)? != eta.evaluate(g)? {
            witness = Some(g.clone());
            break;
        }
    }
    Ok(BallCheck {
        symbolic_equal: xi == eta,
        agree_on_ball: witness.is_none(),
        witness,
        ball_size: ball.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::corpus;
    use crate::exact::{int, rat, ElemDegree};
    use crate::polymap::basis;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn heis() -> Group {
        Group::new(corpus::heisenberg()).unwrap()
    }

    fn zeta(g: &Group, i: usize, j: usize) -> PolyMap {
        PolyMap::zeta(g, i, j).unwrap()
    }

    #[test]
    fn right_differences() {
        let g = heis();
        let z = zeta(&g, 2, 1);
        assert_eq!(right_diff(&z, &g.basis_element(2)).unwrap(), PolyMap::one(&g));
        assert_eq!(right_diff(&z, &g.basis_element(0)).unwrap(), zeta(&g, 1, 2).scale(&int(-1)));
        let c = PolyMap::constant(&g, int(5));
        assert!(right_diff(&c, &g.basis_element(1)).unwrap().is_zero());
    }

    #[test]
    fn left_differences() {
        let g = heis();
        let z = zeta(&g, 2, 1);
        let x = g.basis_element(0);
        let y = g.basis_element(1);
        assert!(left_diff(&z, &x).unwrap().is_zero());
        assert_eq!(left_diff(&z, &y).unwrap(), zeta(&g, 1, 1));
        assert_eq!(left_diff(&zeta(&g, 1, 1), &x).unwrap(), PolyMap::constant(&g, int(-1)));
    }

    #[test]
    fn unitized() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = Group::new(corpus::free(2, 3)).unwrap();
        let b = basis(&g, 3);
        for _ in 0..10 {
            let mut xi = PolyMap::zero(&g);
            for m in &b {
                xi = xi.add(&m.scale(&int(rng.random_range(-3..=3)))).unwrap();
            }
            let h = g.element((0..g.dim()).map(|_| rat(rng.random_range(-5..=5), 2)).collect()).unwrap();
            assert!(unitized_diff(&xi, &h).unwrap().evaluate(&g.identity()).unwrap().is_zero());
        }
        let ab = Group::new(corpus::abelian(3)).unwrap();
        let h = ab.element(vec![int(2), int(-1), rat(1, 3)]).unwrap();
        assert!(unitized_diff(&zeta(&ab, 1, 2), &h).unwrap().is_zero());
        assert!(unitized_diff(&PolyMap::constant(&ab, int(9)), &h).unwrap().is_zero());
    }

    #[test]
    fn verify_degree_examples() {
        let g = heis();
        let z = zeta(&g, 2, 1);
        assert!(verify_degree(&z, Degree::Finite(2)));
        assert!(!verify_degree(&z, Degree::Finite(1)));
        assert!(verify_degree(&PolyMap::zero(&g), Degree::NegInfinity));
        assert!(!verify_degree(&PolyMap::one(&g), Degree::NegInfinity));
        let xz = zeta(&g, 1, 1).product(&z).unwrap();
        assert_eq!(degree_by_differences(&xz, 10), Some(Degree::Finite(3)));
    }

    #[test]
    fn degree_theorem_on_free_and_u4() {
        for spec in [corpus::free(2, 3), corpus::unitriangular(4)] {
            let g = Group::new(spec).unwrap();
            for m in basis(&g, 4) {
                let d = m.degree();
                assert_eq!(degree_by_differences(&m, 8), Some(d), "{m}");
                assert!(verify_degree_left(&m, d));
                if let Degree::Finite(k) = d {
                    if k > 0 {
                        assert!(!verify_degree_left(&m, Degree::Finite(k - 1)));
                    }
                }
            }
        }
    }

    #[test]
    fn degree_drop_over_basis_elements() {
        let g = Group::new(corpus::unitriangular(4)).unwrap();
        for m in basis(&g, 4) {
            for a in 0..g.dim() {
                let e = g.basis_element(a);
                let d = left_diff(&m, &e).unwrap().degree();
                assert!(d <= m.degree().dot_sub(ElemDegree::Finite(g.spec().level(a) as u32)));
                let d = right_diff(&m, &e).unwrap().degree();
                assert!(d <= m.degree().dot_sub(ElemDegree::Finite(g.spec().level(a) as u32)));
            }
        }
    }

    #[test]
    fn cocycle_identity_of_right_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = heis();
        let xi = zeta(&g, 2, 1).product(&zeta(&g, 1, 1)).unwrap();
        let mut order_matters = false;
        for _ in 0..10 {
            let mut r = || g.element((0..3).map(|_| int(rng.random_range(-4..=4))).collect()).unwrap();
            let (a, b) = (r(), r());
            let lhs = right_diff(&xi, &a.mul(&b).unwrap()).unwrap();
            let da = right_diff(&xi, &a).unwrap();
            let db = right_diff(&xi, &b).unwrap();
            let sum = da.add(&db).unwrap();
            let rhs = right_diff(&db, &a).unwrap().add(&sum).unwrap();
            assert_eq!(lhs, rhs);
            let swapped = right_diff(&da, &b).unwrap().add(&sum).unwrap();
            order_matters |= lhs != swapped;
        }
        assert!(order_matters);
    }

    #[test]
    fn determination() {
        let g = heis();
        let z = zeta(&g, 2, 1);
        let r = determined_on_ball(&z, &z, 2).unwrap();
        assert!(r.symbolic_equal && r.agree_on_ball);
        let x2 = zeta(&g, 1, 1).product(&zeta(&g, 1, 1)).unwrap();
        let eta = z.add(&x2).unwrap();
        let r = determined_on_ball(&z, &eta, 2).unwrap();
        assert!(!r.symbolic_equal && !r.agree_on_ball);
        assert!(r.witness.is_some());

        assert!(!determined_by_diffs(&z.add(&PolyMap::one(&g)).unwrap(), &z).unwrap());
        assert!(determined_by_diffs(&z, &z).unwrap());
        assert!(!determined_by_diffs(&z, &eta).unwrap());
    }

    #[test]
    fn ball_agreement_matches_symbolic_equality() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = Group::new(corpus::free(2, 3)).unwrap();
        let b = basis(&g, 3);
        for _ in 0..10 {
            let mut xi = PolyMap::zero(&g);
            let mut eta = PolyMap::zero(&g);
            for m in &b {
                let c = int(rng.random_range(-2..=2));
                xi = xi.add(&m.scale(&c)).unwrap();
                let bump = if rng.random_range(0..6) == 0 { int(1) } else { int(0) };
                eta = eta.add(&m.scale(&(c + bump))).unwrap();
            }
            let r = determined_on_ball(&xi, &eta, 3).unwrap();
            assert_eq!(r.symbolic_equal, r.agree_on_ball);
            assert_eq!(r.symbolic_equal, determined_by_diffs(&xi, &eta).unwrap());
        }
    }
}
