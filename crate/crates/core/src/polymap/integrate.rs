use serde::Serialize;

use super::{basis_exponents, PolyMap, PolyMapError};
use crate::exact::{linear_solve, Degree, Matrix, MultiPoly, Rational};
use crate::group::Group;
use crate::polymap::diff::{DiffEngine, Side};

/// A solution of `∂_{g_i} ξ = ξ_i` together with how its degree compares
/// with the two candidate bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Integration {
    #[serde(skip)]
    pub solution: PolyMap,
    pub achieved_degree: Degree,
    pub stated_bound: u32,
    pub within_stated_bound: bool,
    pub within_corrected_bound: bool,
}

/// Finds `ξ` with `∂_{g_i} ξ = targets[i]` on a free nilpotent group, where
/// `g_i` are the level-1 generators and `∂` is the left difference.
///
/// Solves over `Pol_{d'+1}` with columns in basis order, so the particular
/// solution (free variables zero, leftmost pivots) has the least degree
/// among all solutions and no constant term.
pub fn integrate_free(group: &Group, targets: &[PolyMap], bound: u32) -> Result<Integration, PolyMapError> {
    let spec = group.spec();
    let gens = spec.generators().len();
    if targets.len() != gens {
        return Err(PolyMapError::Precondition(format!("expected {gens} targets, found {}", targets.len())));
    }
    if bound as usize >= spec.class() {
        return Err(PolyMapError::Precondition(format!("bound {bound} is not below the class {}", spec.class())));
    }
    for (i, t) in targets.iter().enumerate() {
        if t.group() != group {
            return Err(PolyMapError::GroupMismatch);
        }
        if !t.degree().at_most(bound) {
            return Err(PolyMapError::Precondition(format!("target {} has degree {} > {bound}", i + 1, t.degree())));
        }
    }

    let weights = spec.weights();
    let budget = bound + 1;
    let cols: Vec<Vec<u32>> = basis_exponents(&weights, budget);
    let rows: Vec<Vec<u32>> = basis_exponents(&weights, bound);
    let row_index: std::collections::HashMap<&Vec<u32>, usize> = rows.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let per_gen = rows.len();

    let mut eng = DiffEngine::generators(group, Side::Left);
    let mut a = Matrix::zeros(gens * per_gen, cols.len());
    let vars = group.coord_vars();
    for (j, e) in cols.iter().enumerate() {
        let m = MultiPoly::monomial(vars, e.clone(), Rational::from_integer(1.into()))?;
        for g in 0..gens {
            let d = eng.diff_body(g, &m);
            for (mono, c) in d.terms() {
                let r = row_index[&mono.exps().to_vec()];
                a[(g * per_gen + r, j)] = c.clone();
            }
        }
    }
    let mut b = Vec::with_capacity(gens * per_gen);
    for t in targets {
        b.extend(rows.iter().map(|e| t.body().coeff(e)));
    }

    let x = linear_solve(&a, &b)
        .map_err(|inc| PolyMapError::Integration { generator: inc.row / per_gen + 1, row: inc.row })?;
    let terms = cols.into_iter().zip(x);
    let body = MultiPoly::from_terms(vars, terms)?;
    let solution = PolyMap::from_body(group, body);
    let achieved = solution.degree();
    Ok(Integration {
        achieved_degree: achieved,
        stated_bound: bound,
        within_stated_bound: achieved.at_most(bound),
        within_corrected_bound: achieved.at_most(budget),
        solution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exact::int;
    use crate::polymap::left_diff;

    fn zeta(g: &Group, i: usize, j: usize) -> PolyMap {
        PolyMap::zeta(g, i, j).unwrap()
    }

    #[test]
    fn zero_targets() {
        let g = Group::new(corpus::free(2, 2)).unwrap();
        let z = PolyMap::zero(&g);
        let r = integrate_free(&g, &[z.clone(), z], 1).unwrap();
        assert!(r.solution.is_zero());
        assert_eq!(r.achieved_degree, Degree::NegInfinity);
    }

    #[test]
    fn recovers_zeta_z() {
        let g = Group::new(corpus::free(2, 2)).unwrap();
        let z = zeta(&g, 2, 1);
        let t: Vec<PolyMap> = (0..2).map(|a| left_diff(&z, &g.basis_element(a)).unwrap()).collect();
        let r = integrate_free(&g, &t, 1).unwrap();
        assert_eq!(r.solution, z);
        assert_eq!(r.achieved_degree, Degree::Finite(2));
        assert!(!r.within_stated_bound);
        assert!(r.within_corrected_bound);
    }

    #[test]
    fn constant_targets() {
        let g = Group::new(corpus::free(2, 3)).unwrap();
        let t = [PolyMap::one(&g), PolyMap::zero(&g)];
        let r = integrate_free(&g, &t, 0).unwrap();
        assert_eq!(r.solution, zeta(&g, 1, 1).scale(&int(-1)));
        for (a, want) in t.iter().enumerate() {
            assert_eq!(&left_diff(&r.solution, &g.basis_element(a)).unwrap(), want);
        }
    }

    #[test]
    fn degree_one_targets_integrate_on_free_groups() {
        // ∂_x ξ = ζ_y, ∂_y ξ = 0 is solved by -ζ_x ζ_y - ζ_z
        let g = Group::new(corpus::free(2, 3)).unwrap();
        let t = [zeta(&g, 1, 2), PolyMap::zero(&g)];
        let r = integrate_free(&g, &t, 1).unwrap();
        let want = zeta(&g, 1, 1).product(&zeta(&g, 1, 2)).unwrap().add(&zeta(&g, 2, 1)).unwrap().scale(&int(-1));
        assert_eq!(r.solution, want);
        assert!(integrate_free(&g, &t, 3).is_err());
    }

    #[test]
    fn inconsistent_systems_name_a_generator() {
        // U_4 is not free: some generator patterns cannot be integrated
        let g = Group::new(corpus::unitriangular(4)).unwrap();
        let mut failures = 0;
        for i in 0..3 {
            for j in 1..=3 {
                let mut t = vec![PolyMap::zero(&g); 3];
                t[i] = zeta(&g, 1, j);
                match integrate_free(&g, &t, 1) {
                    Err(PolyMapError::Integration { generator, .. }) => {
                        assert!((1..=3).contains(&generator));
                        failures += 1;
                    }
                    Err(e) => panic!("{e}"),
                    Ok(r) => {
                        for (a, want) in t.iter().enumerate() {
                            assert_eq!(&left_diff(&r.solution, &g.basis_element(a)).unwrap(), want);
                        }
                    }
                }
            }
        }
        assert!(failures > 0);
    }
}
