use std::collections::HashMap;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::Serialize;

use super::{DualityError, GroupHom};
use crate::exact::{EchelonBasis, Monomial, MultiPoly, Rational};
use crate::group::Group;
use crate::polymap::{basis_exponents, pull_m, PolyMap, TensorPolyMap};

/// A linear map `Pol_D(G) → Pol(H)`, given on the ζ-monomial basis.
#[derive(Debug, Clone)]
pub struct AlgebraMorphism {
    source: Group,
    target: Group,
    degree: u32,
    exps: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    images: Vec<PolyMap>,
    flags: OnceLock<MorphismFlags>,
}

impl PartialEq for AlgebraMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.degree == other.degree
            && self.images == other.images
    }
}

impl Eq for AlgebraMorphism {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MorphismFlags {
    pub strongly_unital: bool,
    pub degree_preserving: bool,
    pub properly_degree_preserving: bool,
    pub multiplicative: bool,
    pub comultiplicative: bool,
}

impl MorphismFlags {
    pub fn all(&self) -> bool {
        self.strongly_unital
            && self.degree_preserving
            && self.properly_degree_preserving
            && self.multiplicative
            && self.comultiplicative
    }

    /// Names of the flags needed for reconstruction that fail.
    pub fn failing_for_reconstruction(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, ok) in [
            ("strongly_unital", self.strongly_unital),
            ("degree_preserving", self.degree_preserving),
            ("multiplicative", self.multiplicative),
            ("comultiplicative", self.comultiplicative),
        ] {
            if !ok {
                out.push(name.to_string());
            }
        }
        out
    }
}

/// Where co-multiplicativity fails: the basis monomial and
/// `(Ψ⊗Ψ)(m*ζ) − m*(Ψζ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComultWitness {
    pub exps: Vec<u32>,
    pub difference: TensorPolyMap,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComultCheck {
    pub holds: bool,
    pub witness: Option<ComultWitness>,
}

fn monomial_images(factors: &[MultiPoly], exps: &[Vec<u32>], one: MultiPoly) -> Vec<MultiPoly> {
    let mut memo: HashMap<Vec<u32>, MultiPoly> = HashMap::new();
    fn go(e: &[u32], factors: &[MultiPoly], one: &MultiPoly, memo: &mut HashMap<Vec<u32>, MultiPoly>) -> MultiPoly {
        if let Some(p) = memo.get(e) {
            return p.clone();
        }
        let p = match e.iter().position(|&x| x > 0) {
            None => one.clone(),
            Some(i) => {
                let mut f = e.to_vec();
                f[i] -= 1;
                &go(&f, factors, one, memo) * &factors[i]
            }
        };
        memo.insert(e.to_vec(), p.clone());
        p
    }
    exps.iter().map(|e| go(e, factors, &one, &mut memo)).collect()
}

impl AlgebraMorphism {
    /// From the images of every basis monomial of `Pol_D(source)`, listed in
    /// basis order.
    pub fn from_images(source: &Group, target: &Group, degree: u32, images: Vec<PolyMap>) -> Result<Self, DualityError> {
        let exps = basis_exponents(&source.spec().weights(), degree);
        if images.len() != exps.len() {
            return Err(DualityError::ImageCount { expected: exps.len(), found: images.len() });
        }
        if images.iter().any(|p| p.group() != target) {
            return Err(DualityError::GroupMismatch);
        }
        let index = exps.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Ok(AlgebraMorphism {
            source: source.clone(),
            target: target.clone(),
            degree,
            exps,
            index,
            images,
            flags: OnceLock::new(),
        })
    }

    /// The algebra map with `ζ_a ↦ zeta_images[a]`, extended multiplicatively.
    pub fn from_zeta_images(
        source: &Group,
        target: &Group,
        degree: u32,
        zeta_images: Vec<PolyMap>,
    ) -> Result<Self, DualityError> {
        if zeta_images.len() != source.dim() {
            return Err(DualityError::ImageCount { expected: source.dim(), found: zeta_images.len() });
        }
        if zeta_images.iter().any(|p| p.group() != target) {
            return Err(DualityError::GroupMismatch);
        }
        let exps = basis_exponents(&source.spec().weights(), degree);
        let factors: Vec<MultiPoly> = zeta_images.iter().map(|p| p.body().clone()).collect();
        let bodies = monomial_images(&factors, &exps, MultiPoly::one(target.coord_vars()));
        let images = bodies.into_iter().map(|b| PolyMap::new(target, b)).collect::<Result<Vec<_>, _>>()?;
        Self::from_images(source, target, degree, images)
    }

    pub fn identity(group: &Group, degree: u32) -> Self {
        let z = (0..group.dim()).map(|a| PolyMap::zeta_at(group, a)).collect();
        Self::from_zeta_images(group, group, degree, z).expect("identity images are well formed")
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Basis multi-indices, in the order of [`AlgebraMorphism::images`].
    pub fn basis_exponents(&self) -> &[Vec<u32>] {
        &self.exps
    }

    pub fn images(&self) -> &[PolyMap] {
        &self.images
    }

    pub fn image_of(&self, exps: &[u32]) -> Option<&PolyMap> {
        self.index.get(exps).map(|&i| &self.images[i])
    }

    /// A copy with the image of one basis monomial replaced.
    pub fn with_image(&self, exps: &[u32], image: PolyMap) -> Result<Self, DualityError> {
        let i = *self.index.get(exps).ok_or_else(|| DualityError::UnknownMonomial(exps.to_vec()))?;
        if image.group() != &self.target {
            return Err(DualityError::GroupMismatch);
        }
        let mut images = self.images.clone();
        images[i] = image;
        Self::from_images(&self.source, &self.target, self.degree, images)
    }

    /// `Ψ(ξ)` for `ξ` of degree at most the truncation degree.
    pub fn apply(&self, xi: &PolyMap) -> Result<PolyMap, DualityError> {
        if xi.group() != &self.source {
            return Err(DualityError::GroupMismatch);
        }
        let mut out = MultiPoly::zero(self.target.coord_vars());
        for (m, c) in xi.body().terms() {
            let i = *self.index.get(m.exps()).ok_or_else(|| DualityError::UnknownMonomial(m.exps().to_vec()))?;
            out.add_scaled(self.images[i].body(), c);
        }
        Ok(PolyMap::new(&self.target, out)?)
    }

    /// `(Ψ⊗Ψ)(T)` for a tensor on `G × G` whose factors lie in `Pol_D(G)`.
    fn apply_tensor(&self, t: &TensorPolyMap) -> Result<TensorPolyMap, DualityError> {
        let h = &self.target;
        let mut acc: Option<MultiPoly> = None;
        for (l, r, c) in t.simple_tensors() {
            let pl = self.image_of(&l).ok_or_else(|| DualityError::UnknownMonomial(l.clone()))?;
            let pr = self.image_of(&r).ok_or_else(|| DualityError::UnknownMonomial(r.clone()))?;
            let term = TensorPolyMap::tensor(pl, pr);
            match &mut acc {
                None => acc = Some(term.body().scale(&c)),
                Some(a) => a.add_scaled(term.body(), &c),
            }
        }
        let body = match acc {
            Some(b) => b,
            None => TensorPolyMap::tensor(&PolyMap::zero(h), &PolyMap::zero(h)).body().clone(),
        };
        Ok(TensorPolyMap::new(h, h, body)?)
    }

    pub fn flags(&self) -> MorphismFlags {
        *self.flags.get_or_init(|| check_morphism_flags(self))
    }
}

/// `(Ψ⊗Ψ) ∘ m*_G = m*_H ∘ Ψ` on every basis monomial of degree `≤ d`.
pub fn check_comultiplicative(psi: &AlgebraMorphism, d: u32) -> Result<ComultCheck, DualityError> {
    let weights = psi.source.spec().weights();
    for (e, img) in psi.exps.iter().zip(&psi.images) {
        let m = Monomial::new(e.clone());
        if m.weighted_degree(&weights) > d {
            continue;
        }
        let xi = PolyMap::zeta_monomial(&psi.source, e)?;
        let lhs = psi.apply_tensor(&pull_m(&xi))?;
        let rhs = pull_m(img);
        if lhs != rhs {
            let difference = lhs.sub(&rhs)?;
            return Ok(ComultCheck { holds: false, witness: Some(ComultWitness { exps: e.clone(), difference }) });
        }
    }
    Ok(ComultCheck { holds: true, witness: None })
}

/// Evaluates every flag on the truncated basis.
pub fn check_morphism_flags(psi: &AlgebraMorphism) -> MorphismFlags {
    let weights = psi.source.spec().weights();
    let hw = psi.target.spec().weights();
    let deg = |e: &[u32]| -> u32 { e.iter().zip(&weights).map(|(x, w)| x * w).sum() };

    let mut strongly_unital = true;
    for (e, img) in psi.exps.iter().zip(&psi.images) {
        let want = if deg(e) == 0 { Rational::one() } else { Rational::zero() };
        if img.at_identity() != want {
            strongly_unital = false;
        }
        if deg(e) == 0 && *img != PolyMap::one(&psi.target) {
            strongly_unital = false;
        }
    }

    let degree_preserving = psi.exps.iter().zip(&psi.images).all(|(e, img)| img.degree().at_most(deg(e)));

    let properly_degree_preserving = degree_preserving
        && (0..=psi.degree).all(|k| {
            let mut ech = EchelonBasis::new();
            psi.exps.iter().zip(&psi.images).filter(|(e, _)| deg(e) == k).all(|(_, img)| {
                let top = img.body().weighted_part(&hw, k);
                ech.insert(top.terms().map(|(m, c)| (m.clone(), c.clone())).collect())
            })
        });

    let mut multiplicative = true;
    'outer: for (i, e) in psi.exps.iter().enumerate() {
        for f in &psi.exps[i..] {
            if deg(e) + deg(f) > psi.degree {
                continue;
            }
            let sum: Vec<u32> = e.iter().zip(f).map(|(a, b)| a + b).collect();
            let prod = psi.images[i].product(psi.image_of(f).expect("in basis")).expect("same group");
            if psi.image_of(&sum) != Some(&prod) {
                multiplicative = false;
                break 'outer;
            }
        }
    }

    let comultiplicative = check_comultiplicative(psi, psi.degree).map(|c| c.holds).unwrap_or(false);

    MorphismFlags { strongly_unital, degree_preserving, properly_degree_preserving, multiplicative, comultiplicative }
}

/// `φ* : Pol_D(G) → Pol(H)` for `φ : H → G`.
pub fn pullback_hom(phi: &GroupHom, degree: u32) -> Result<AlgebraMorphism, DualityError> {
    phi.verify()?;
    let (h, g) = (phi.source(), phi.target());
    let exps = basis_exponents(&g.spec().weights(), degree);
    let bodies = monomial_images(&phi.symbolic(), &exps, MultiPoly::one(h.coord_vars()));
    let images = bodies.into_iter().map(|b| PolyMap::new(h, b)).collect::<Result<Vec<_>, _>>()?;
    AlgebraMorphism::from_images(g, h, degree, images)
}

/// The homomorphism `φ : H → G` inducing `Ψ : Pol(G) → Pol(H)`, with
/// `φ(h_{1,ℓ})` having coordinates `(Ψζ_a)(h_{1,ℓ})`. The result is checked
/// for bracket preservation and for `φ* = Ψ`.
pub fn reconstruct_hom(psi: &AlgebraMorphism) -> Result<GroupHom, DualityError> {
    let (g, h) = (psi.source(), psi.target());
    let class = g.spec().class();
    if (psi.degree as usize) < class {
        return Err(DualityError::DegreeTooSmall { degree: psi.degree, class });
    }
    let failing = psi.flags().failing_for_reconstruction();
    if !failing.is_empty() {
        return Err(DualityError::FlagsFailed(failing));
    }
    let n = g.dim();
    let zetas: Vec<&PolyMap> = (0..n)
        .map(|a| {
            let mut e = vec![0; n];
            e[a] = 1;
            psi.image_of(&e).expect("degree covers every ζ")
        })
        .collect();
    let images = h
        .spec()
        .generators()
        .map(|l| {
            let hl = h.basis_element(l);
            let coords = zetas.iter().map(|z| z.evaluate(&hl)).collect::<Result<Vec<_>, _>>()?;
            Ok(g.element(coords)?)
        })
        .collect::<Result<Vec<_>, DualityError>>()?;
    let phi = GroupHom::new(h, g, images)?;
    phi.verify()?;
    let back = pullback_hom(&phi, psi.degree)?;
    for ((e, a), b) in back.exps.iter().zip(&back.images).zip(&psi.images) {
        if a != b {
            return Err(DualityError::PullbackMismatch(e.clone()));
        }
    }
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exact::int;

    fn heis() -> Group {
        Group::new(corpus::heisenberg()).unwrap()
    }

    fn dilation(g: &Group) -> GroupHom {
        let x = g.basis_element(0).pow(&int(2));
        let y = g.basis_element(1).pow(&int(3));
        GroupHom::new(g, g, vec![x, y]).unwrap()
    }

    #[test]
    fn identity_pullback() {
        let g = heis();
        let psi = pullback_hom(&GroupHom::identity(&g), 3).unwrap();
        assert_eq!(psi, AlgebraMorphism::identity(&g, 3));
        assert!(psi.flags().all());
        assert_eq!(reconstruct_hom(&psi).unwrap(), GroupHom::identity(&g));
    }

    #[test]
    fn dilation_pullback() {
        let g = heis();
        let phi = dilation(&g);
        let psi = pullback_hom(&phi, 2).unwrap();
        let z = PolyMap::zeta(&g, 2, 1).unwrap();
        assert_eq!(psi.apply(&z).unwrap(), z.scale(&int(6)));
        assert!(psi.flags().all());
        assert_eq!(reconstruct_hom(&psi).unwrap(), phi);
        // cross-check the pullback by evaluation on a word ball
        for h in crate::polymap::word_ball(&g, 2) {
            let v = z.evaluate(&phi.apply(&h).unwrap()).unwrap();
            assert_eq!(psi.apply(&z).unwrap().evaluate(&h).unwrap(), v);
        }
    }

    #[test]
    fn trivial_map_pulls_back_to_evaluation_at_identity() {
        let g = heis();
        let f = Group::new(corpus::free(2, 3)).unwrap();
        let psi = pullback_hom(&GroupHom::trivial(&f, &g), 2).unwrap();
        for (e, img) in psi.basis_exponents().iter().zip(psi.images()) {
            let want = if e.iter().all(|&x| x == 0) { PolyMap::one(&f) } else { PolyMap::zero(&f) };
            assert_eq!(img, &want);
        }
    }

    #[test]
    fn perturbed_morphism_fails_with_witness() {
        let g = heis();
        let mut z = (0..3).map(|a| PolyMap::zeta_at(&g, a)).collect::<Vec<_>>();
        // z -> z + x is a homomorphism (x -> xz is central); z -> z + xy is not
        let xy = z[0].product(&z[1]).unwrap();
        z[2] = z[2].add(&xy).unwrap();
        let psi = AlgebraMorphism::from_zeta_images(&g, &g, 2, z).unwrap();
        let c = check_comultiplicative(&psi, 2).unwrap();
        assert!(!c.holds);
        assert_eq!(c.witness.unwrap().exps, vec![0, 0, 1]);
        assert!(matches!(reconstruct_hom(&psi), Err(DualityError::FlagsFailed(_))));
    }

    #[test]
    fn constants_only_in_degree_zero() {
        let g = heis();
        let psi = AlgebraMorphism::identity(&g, 0);
        assert!(check_comultiplicative(&psi, 0).unwrap().holds);
    }

    #[test]
    fn collapsing_a_coordinate() {
        let g = heis();
        let mut z = (0..3).map(|a| PolyMap::zeta_at(&g, a)).collect::<Vec<_>>();
        z[0] = PolyMap::zero(&g);
        let psi = AlgebraMorphism::from_zeta_images(&g, &g, 2, z).unwrap();
        let f = psi.flags();
        assert!(f.degree_preserving);
        assert!(!f.properly_degree_preserving);
    }

    #[test]
    fn functoriality() {
        let g = heis();
        let f = Group::new(corpus::free(2, 3)).unwrap();
        let phi = dilation(&g);
        let a = g.element(vec![int(1), int(2), int(0)]).unwrap();
        let b = g.element(vec![int(0), int(-1), int(3)]).unwrap();
        let psi = GroupHom::new(&f, &g, vec![a, b]).unwrap();
        let comp = phi.compose(&psi).unwrap();
        let d = 2;
        let p_comp = pullback_hom(&comp, d).unwrap();
        let p_phi = pullback_hom(&phi, d).unwrap();
        let p_psi = pullback_hom(&psi, d).unwrap();
        for (img, e) in p_phi.images().iter().zip(p_phi.basis_exponents()) {
            assert_eq!(&p_psi.apply(img).unwrap(), p_comp.image_of(e).unwrap());
        }
    }

    #[test]
    fn uniqueness_detects_higher_degree_perturbation() {
        let g = heis();
        let psi = pullback_hom(&dilation(&g), 2).unwrap();
        let x = PolyMap::zeta(&g, 1, 1).unwrap();
        let e = vec![1, 1, 0];
        let bumped = psi.image_of(&e).unwrap().add(&x).unwrap();
        let broken = psi.with_image(&e, bumped).unwrap();
        assert!(!broken.flags().multiplicative);
        assert_ne!(broken, psi);
    }
}
