use std::fmt;



use super::{PolyMap, PolyMapError};
use crate::exact::{vars, Degree, MultiPoly, Rational, Vars};
use crate::group::{label_vars, Group, GroupElement};

/// An element of `Pol(G₁ × G₂) ≅ Pol(G₁) ⊗ Pol(G₂)`, as a polynomial in the
/// left ζ variables `l_z{i}_{j}` followed by the right ones `z{i}_{j}_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorPolyMap {
    left: Group,
    right: Group,
    body: MultiPoly,
}

pub(crate) fn tensor_vars(left: &Group, right: &Group) -> Vars {
    let l = label_vars(left.spec(), "l_z", "");
    let r = label_vars(right.spec(), "z", "_r");
    let names: Vec<&str> = l.iter().chain(r.iter()).map(String::as_str).collect();
    vars(&names)
}

impl TensorPolyMap {
    pub fn new(left: &Group, right: &Group, body: MultiPoly) -> Result<Self, PolyMapError> {
        if *body.vars() != tensor_vars(left, right) {
            return Err(PolyMapError::WrongVariables);
        }
        Ok(TensorPolyMap { left: left.clone(), right: right.clone(), body })
    }

    /// `ξ ⊗ η`, the map `(g, h) ↦ ξ(g) η(h)`.
    pub fn tensor(xi: &PolyMap, eta: &PolyMap) -> Self {
        let (left, right) = (xi.group(), eta.group());
        let tv = tensor_vars(left, right);
        let (n, m) = (left.dim(), right.dim());
        let l = xi.body().embed(&tv, &(0..n).collect::<Vec<_>>());
        let r = eta.body().embed(&tv, &(n..n + m).collect::<Vec<_>>());
        TensorPolyMap { left: left.clone(), right: right.clone(), body: &l * &r }
    }

    pub fn left(&self) -> &Group {
        &self.left
    }

    pub fn right(&self) -> &Group {
        &self.right
    }

    pub fn body(&self) -> &MultiPoly {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn sub(&self, other: &TensorPolyMap) -> Result<TensorPolyMap, PolyMapError> {
        if self.left != other.left || self.right != other.right {
            return Err(PolyMapError::GroupMismatch);
        }
        Ok(TensorPolyMap { left: self.left.clone(), right: self.right.clone(), body: &self.body - &other.body })
    }

    pub fn evaluate(&self, g: &GroupElement, h: &GroupElement) -> Result<Rational, PolyMapError> {
        if *g.group() != self.left || *h.group() != self.right {
            return Err(PolyMapError::GroupMismatch);
        }
        let point: Vec<Rational> = g.coords().iter().chain(h.coords()).cloned().collect();
        Ok(self.body.evaluate(&point))
    }

    /// The unique expansion `Σ c · ζ_𝐝 ⊗ ζ_𝐞` as `(𝐝, 𝐞, c)` triples.
    pub fn simple_tensors(&self) -> Vec<(Vec<u32>, Vec<u32>, Rational)> {
        let n = self.left.dim();
        self.body.terms().map(|(m, c)| (m.exps()[..n].to_vec(), m.exps()[n..].to_vec(), c.clone())).collect()
    }

    /// Weighted degree with the left and right weights side by side.
    pub fn degree(&self) -> Degree {
        let mut w = self.left.spec().weights();
        w.extend(self.right.spec().weights());
        self.body.weighted_degree(&w)
    }
}

impl fmt::Display for TensorPolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.body)
    }
}

fn check_group(xi: &PolyMap, g: &Group) -> Result<(), PolyMapError> {
    if xi.group() == g {
        Ok(())
    } else {
        Err(PolyMapError::GroupMismatch)
    }
}

/// `m*ξ = ξ ∘ m`, the map `(g, h) ↦ ξ(gh)`.
pub fn pull_m(xi: &PolyMap) -> TensorPolyMap {
    let g = xi.group();
    let tv = tensor_vars(g, g);
    let images: Vec<MultiPoly> = g.symbolic_mul().components().iter().map(|p| p.with_vars(&tv)).collect();
    let body = xi.body().substitute(&images, &tv).expect("images live over the tensor variables");
    TensorPolyMap { left: g.clone(), right: g.clone(), body }
}

/// `m̃*ξ`, the map `(g, h) ↦ ξ(g h⁻¹)`.
pub fn pull_mtilde(xi: &PolyMap) -> TensorPolyMap {
    let g = xi.group();
    let n = g.dim();
    let tv = tensor_vars(g, g);
    let right: Vec<usize> = (n..2 * n).collect();
    let mut inner: Vec<MultiPoly> = (0..n).map(|a| MultiPoly::var(&tv, a)).collect();
    inner.extend(g.symbolic_inv().iter().map(|p| p.embed(&tv, &right)));
    let images: Vec<MultiPoly> = g
        .symbolic_mul()
        .components()
        .iter()
        .map(|p| p.with_vars(&tv).substitute(&inner, &tv).expect("consistent variables"))
        .collect();
    let body = xi.body().substitute(&images, &tv).expect("consistent variables");
    TensorPolyMap { left: g.clone(), right: g.clone(), body }
}

/// `ξ ∘ inv`.
pub fn pull_inv(xi: &PolyMap) -> PolyMap {
    let g = xi.group();
    let body = xi.body().substitute(g.symbolic_inv(), g.coord_vars()).expect("consistent variables");
    PolyMap::from_body(g, body)
}

/// Compares `(m ⊗ id)* m*ξ` with `(id ⊗ m)* m*ξ` in `Pol(G × G × G)`.
pub fn check_coassociative(xi: &PolyMap) -> bool {
    let g = xi.group();
    let n = g.dim();
    let names: Vec<String> = (0..3)
        .flat_map(|k| g.spec().labels().iter().map(move |l| format!("z{}_{}#{k}", l.level, l.index)))
        .collect();
    let v3 = vars(&names);
    let block = |k: usize| -> Vec<usize> { (k * n..(k + 1) * n).collect() };
    let mul_on = |a: usize, b: usize| -> Vec<MultiPoly> {
        let pos: Vec<usize> = block(a).into_iter().chain(block(b)).collect();
        g.symbolic_mul().components().iter().map(|p| p.embed(&v3, &pos)).collect()
    };
    let vars_of = |k: usize| -> Vec<MultiPoly> { block(k).into_iter().map(|i| MultiPoly::var(&v3, i)).collect() };
    let t = pull_m(xi);
    let lhs_images: Vec<MultiPoly> = mul_on(0, 1).into_iter().chain(vars_of(2)).collect();
    let rhs_images: Vec<MultiPoly> = vars_of(0).into_iter().chain(mul_on(1, 2)).collect();
    let lhs = t.body().substitute(&lhs_images, &v3).expect("consistent variables");
    let rhs = t.body().substitute(&rhs_images, &v3).expect("consistent variables");
    lhs == rhs
}

/// `ξ(ghk) - ξ(gh) - ξ(hk) - ξ(gk) + ξ(g) + ξ(h) + ξ(k)`, which vanishes for
/// every unital `ξ` of degree at most two.
pub fn quadratic_defect(
    xi: &PolyMap,
    g: &GroupElement,
    h: &GroupElement,
    k: &GroupElement,
) -> Result<Rational, PolyMapError> {
    for e in [g, h, k] {
        check_group(xi, e.group())?;
    }
    let gh = g.mul(h)?;
    let ghk = gh.mul(k)?;
    let hk = h.mul(k)?;
    let gk = g.mul(k)?;
    let ev = |e: &GroupElement| xi.evaluate(e);
    Ok(ev(&ghk)? - ev(&gh)? - ev(&hk)? - ev(&gk)? + ev(g)? + ev(h)? + ev(k)?)
}
