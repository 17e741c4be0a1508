use std::collections::BTreeMap;

use num_traits::Zero;

use super::DualityError;
use crate::exact::{EchelonBasis, Matrix, MultiPoly, Rational};
use crate::group::{Group, GroupElement};
use crate::lie::{LieAlgebraSpec, LieElement};

/// A homomorphism `H → G` given by the images of the level-1 generators of
/// `H`, extended to Lie algebras through right-nested brackets.
#[derive(Debug, Clone)]
pub struct GroupHom {
    source: Group,
    target: Group,
    generator_images: Vec<GroupElement>,
    /// `dim G × dim H`: column `b` holds the image of `Y_b`.
    lie_map: Matrix,
    bracket_failures: Vec<(usize, usize)>,
}

impl PartialEq for GroupHom {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.generator_images == other.generator_images
    }
}

impl Eq for GroupHom {}

fn sparse(v: &[Rational]) -> BTreeMap<usize, Rational> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

impl GroupHom {
    /// Builds the map. Bracket preservation is checked but not enforced;
    /// see [`GroupHom::verify`].
    pub fn new(source: &Group, target: &Group, generator_images: Vec<GroupElement>) -> Result<Self, DualityError> {
        let hs = source.spec();
        let gens = hs.generators().len();
        if generator_images.len() != gens {
            return Err(DualityError::GeneratorCount { expected: gens, found: generator_images.len() });
        }
        if generator_images.iter().any(|g| g.group() != target) {
            return Err(DualityError::GroupMismatch);
        }
        let lie_map = extend_to_lie(hs, target, &generator_images)?;
        let bracket_failures = bracket_failures(hs, target.spec(), &lie_map);
        Ok(GroupHom { source: source.clone(), target: target.clone(), generator_images, lie_map, bracket_failures })
    }

    pub fn identity(group: &Group) -> Self {
        let imgs = group.spec().generators().map(|a| group.basis_element(a)).collect();
        Self::new(group, group, imgs).expect("identity is a homomorphism")
    }

    /// Everything to the identity.
    pub fn trivial(source: &Group, target: &Group) -> Self {
        let imgs = source.spec().generators().map(|_| target.identity()).collect();
        Self::new(source, target, imgs).expect("trivial map is a homomorphism")
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn generator_images(&self) -> &[GroupElement] {
        &self.generator_images
    }

    /// The induced linear map of Lie algebras.
    pub fn lie_map(&self) -> &Matrix {
        &self.lie_map
    }

    /// Ok when the induced Lie algebra map preserves brackets exactly.
    pub fn verify(&self) -> Result<(), DualityError> {
        if self.bracket_failures.is_empty() {
            Ok(())
        } else {
            Err(DualityError::NotHomomorphism(self.bracket_failures.clone()))
        }
    }

    pub fn apply(&self, h: &GroupElement) -> Result<GroupElement, DualityError> {
        if h.group() != &self.source {
            return Err(DualityError::GroupMismatch);
        }
        let x = self.source.first_kind(h)?;
        let y = LieElement::new(self.target.spec().clone(), self.lie_map.mul_vec(x.coeffs()));
        Ok(self.target.second_kind(&y))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GroupHom) -> Result<GroupHom, DualityError> {
        if inner.target != self.source {
            return Err(DualityError::GroupMismatch);
        }
        let imgs = inner.generator_images.iter().map(|g| self.apply(g)).collect::<Result<Vec<_>, _>>()?;
        GroupHom::new(&inner.source, &self.target, imgs)
    }

    /// Second-kind coordinates of `φ(h)` as polynomials in the coordinates of `h`.
    pub fn symbolic(&self) -> Vec<MultiPoly> {
        let sv = self.source.coord_vars();
        let log = self.source.symbolic_log();
        let n = self.target.dim();
        let lin: Vec<MultiPoly> = (0..n)
            .map(|a| {
                let mut p = MultiPoly::zero(sv);
                for (b, l) in log.iter().enumerate() {
                    let c = &self.lie_map[(a, b)];
                    if !c.is_zero() {
                        p.add_scaled(l, c);
                    }
                }
                p
            })
            .collect();
        self.target
            .symbolic_exp()
            .iter()
            .map(|p| p.substitute(&lin, sv).expect("consistent variables"))
            .collect()
    }

    /// Homomorphism with a linear isomorphism of Lie algebras.
    pub fn is_isomorphism(&self) -> bool {
        self.verify().is_ok() && self.source.dim() == self.target.dim() && self.lie_map.rank() == self.source.dim()
    }
}

/// Right-nested brackets of generators, enough of them to span `h`, and
/// their prescribed images; the linear map is then `U V⁻¹`.
fn extend_to_lie(hs: &LieAlgebraSpec, target: &Group, images: &[GroupElement]) -> Result<Matrix, DualityError> {
    let (n, m) = (hs.dim(), target.dim());
    let gs = target.spec();
    let gen_vecs: Vec<(Vec<Rational>, Vec<Rational>)> = hs
        .generators()
        .zip(images)
        .map(|(a, g)| {
            let mut v = vec![Rational::zero(); n];
            v[a] = Rational::from_integer(1.into());
            Ok((v, target.first_kind(g)?.coeffs().to_vec()))
        })
        .collect::<Result<_, DualityError>>()?;
    let mut ech = EchelonBasis::new();
    let mut kept: Vec<(Vec<Rational>, Vec<Rational>)> = Vec::new();
    let mut layer: Vec<(Vec<Rational>, Vec<Rational>)> = Vec::new();
    for (v, u) in &gen_vecs {
        if ech.insert(sparse(v)) {
            kept.push((v.clone(), u.clone()));
            layer.push((v.clone(), u.clone()));
        }
    }
    while kept.len() < n && !layer.is_empty() {
        let mut next = Vec::new();
        for (gv, gu) in &gen_vecs {
            for (v, u) in &layer {
                let nv = hs.bracket_vectors(gv, v);
                if ech.insert(sparse(&nv)) {
                    let nu = gs.bracket_vectors(gu, u);
                    kept.push((nv.clone(), nu.clone()));
                    next.push((nv, nu));
                }
            }
        }
        layer = next;
    }
    if kept.len() < n {
        return Err(DualityError::NotGenerated);
    }
    let mut v = Matrix::zeros(n, n);
    let mut u = Matrix::zeros(m, n);
    for (j, (vv, uu)) in kept.iter().enumerate() {
        for i in 0..n {
            v[(i, j)] = vv[i].clone();
        }
        for i in 0..m {
            u[(i, j)] = uu[i].clone();
        }
    }
    let vinv = v.inverse().ok_or(DualityError::NotGenerated)?;
    Ok(u.mul(&vinv))
}

fn bracket_failures(hs: &LieAlgebraSpec, gs: &LieAlgebraSpec, l: &Matrix) -> Vec<(usize, usize)> {
    let n = hs.dim();
    let cols: Vec<Vec<Rational>> = (0..n).map(|b| l.column(b)).collect();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let mut lhs = vec![Rational::zero(); gs.dim()];
            for (k, c) in hs.bracket_basis(a, b) {
                for (o, x) in lhs.iter_mut().zip(&cols[*k]) {
                    *o += c * x;
                }
            }
            if lhs != gs.bracket_vectors(&cols[a], &cols[b]) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Whether `candidate : spec₂ → spec₁` is an isomorphism of the completions.
pub fn verify_iso(spec1: &LieAlgebraSpec, spec2: &LieAlgebraSpec, candidate: &GroupHom) -> bool {
    **candidate.source().spec() == *spec2 && **candidate.target().spec() == *spec1 && candidate.is_isomorphism()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exact::{int, rat};

    fn heis() -> Group {
        Group::new(corpus::heisenberg()).unwrap()
    }

    pub(crate) fn dilation(g: &Group) -> GroupHom {
        let x = g.basis_element(0).pow(&int(2));
        let y = g.basis_element(1).pow(&int(3));
        GroupHom::new(g, g, vec![x, y]).unwrap()
    }

    #[test]
    fn dilation_is_an_automorphism() {
        let g = heis();
        let phi = dilation(&g);
        assert!(phi.verify().is_ok());
        assert_eq!(phi.apply(&g.basis_element(2)).unwrap(), g.basis_element(2).pow(&int(6)));
        assert!(verify_iso(g.spec(), g.spec(), &phi));
        assert!(verify_iso(g.spec(), g.spec(), &GroupHom::identity(&g)));
    }

    #[test]
    fn apply_is_a_homomorphism() {
        let g = heis();
        let f = Group::new(corpus::free(2, 3)).unwrap();
        let a = g.element(vec![rat(1, 2), int(3), int(-1)]).unwrap();
        let b = g.element(vec![int(2), rat(-1, 3), int(5)]).unwrap();
        let phi = GroupHom::new(&f, &g, vec![a, b]).unwrap();
        assert!(phi.verify().is_ok());
        let p = f.element(vec![int(1), int(2), int(3), rat(1, 2), int(-1)]).unwrap();
        let q = f.element(vec![int(-2), int(0), int(1), int(4), rat(2, 3)]).unwrap();
        let lhs = phi.apply(&p.mul(&q).unwrap()).unwrap();
        let rhs = phi.apply(&p).unwrap().mul(&phi.apply(&q).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(!phi.is_isomorphism());
        let sym = phi.symbolic();
        let got: Vec<Rational> = sym.iter().map(|s| s.evaluate(p.coords())).collect();
        assert_eq!(got, phi.apply(&p).unwrap().coords());
    }

    #[test]
    fn non_homomorphisms_are_flagged() {
        // ℚ² → Heisenberg sending the generators to x and y cannot preserve brackets
        let ab = Group::new(corpus::abelian(2)).unwrap();
        let g = heis();
        let phi = GroupHom::new(&ab, &g, vec![g.basis_element(0), g.basis_element(1)]).unwrap();
        assert_eq!(phi.verify(), Err(DualityError::NotHomomorphism(vec![(0, 1)])));
        let psi = GroupHom::new(&ab, &g, vec![g.basis_element(0), g.basis_element(2)]).unwrap();
        assert!(psi.verify().is_ok());
        assert!(!verify_iso(g.spec(), ab.spec(), &psi));
    }

    #[test]
    fn composition() {
        let g = heis();
        let phi = dilation(&g);
        let sq = phi.compose(&phi).unwrap();
        assert_eq!(sq.generator_images()[0], g.basis_element(0).pow(&int(4)));
        assert_eq!(sq.generator_images()[1], g.basis_element(1).pow(&int(9)));
        assert_eq!(GroupHom::identity(&g).compose(&phi).unwrap(), phi);
    }
}
