//! Baker–Campbell–Hausdorff series in Dynkin form.
//!
//! The associative series `log(e^X e^Y) = Σ_w a_w w` is computed in the
//! truncated free associative algebra; Dynkin's theorem then gives
//! `BCH(X, Y) = Σ_w (a_w / |w|) [w]` with the right-nested bracket
//! `[w_1 w_2 … w_m] = [w_1, [w_2, … [w_{m-1}, w_m]…]]`. In a class-`c`
//! algebra every bracket of length `> c` vanishes, so truncating at `c` is
//! exact.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use super::assoc::WordPoly;
use super::LieAlgebraSpec;
use crate::exact::{Coefficient, Rational};

#[derive(Debug, Clone)]
pub struct BchSeries {
    class: usize,
    /// `(word over {0 = X, 1 = Y}, a_w / |w|)` for every word whose
    /// right-nested bracket is not identically zero.
    terms: Vec<(Vec<u8>, Rational)>,
}

impl BchSeries {
    pub fn new(class: usize) -> Self {
        let log = WordPoly::letter(class, 0).exp().mul(&WordPoly::letter(class, 1).exp()).log();
        let terms = log
            .terms()
            .filter(|(w, c)| !c.is_zero() && !w.is_empty())
            // [.., [a, a]] = 0
            .filter(|(w, _)| w.len() < 2 || w[w.len() - 1] != w[w.len() - 2])
            .map(|(w, c)| (w.clone(), c / Rational::from_integer((w.len() as i64).into())))
            .collect();
        BchSeries { class, terms }
    }

    /// Shared series for a given class.
    pub fn for_class(class: usize) -> Arc<BchSeries> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<BchSeries>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("bch cache poisoned");
        guard.entry(class).or_insert_with(|| Arc::new(BchSeries::new(class))).clone()
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn terms(&self) -> &[(Vec<u8>, Rational)] {
        &self.terms
    }

    /// Evaluates the series on coefficient vectors `x`, `y` of `spec`.
    pub fn apply<C: Coefficient>(&self, spec: &LieAlgebraSpec, x: &[C], y: &[C]) -> Vec<C> {
        let Some(proto) = x.first() else { return Vec::new() };
        let mut out = vec![proto.zero_like(); x.len()];
        // nested brackets memoized by suffix
        let mut memo: HashMap<Vec<u8>, Vec<C>> = HashMap::new();
        memo.insert(vec![0], x.to_vec());
        memo.insert(vec![1], y.to_vec());
        for (w, c) in &self.terms {
            let v = nested(spec, w, &mut memo);
            if v.iter().all(Coefficient::is_zero_coeff) {
                continue;
            }
            for (o, vi) in out.iter_mut().zip(&v) {
                if !vi.is_zero_coeff() {
                    o.add_assign_scaled(vi, c);
                }
            }
        }
        out
    }
}

fn nested<C: Coefficient>(spec: &LieAlgebraSpec, w: &[u8], memo: &mut HashMap<Vec<u8>, Vec<C>>) -> Vec<C> {
    if let Some(v) = memo.get(w) {
        return v.clone();
    }
    let tail = nested(spec, &w[1..], memo);
    let head = memo[&vec![w[0]]].clone();
    let v = if tail.iter().all(Coefficient::is_zero_coeff) {
        tail
    } else {
        spec.bracket_coeffs(&head, &tail)
    };
    memo.insert(w.to_vec(), v.clone());
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn low_order_terms() {
        let s = BchSeries::new(3);
        let get = |w: &[u8]| s.terms().iter().find(|(x, _)| x == w).map(|(_, c)| c.clone());
        // X + Y + 1/2 [X,Y] + 1/12 [X,[X,Y]] - 1/12 [Y,[X,Y]]
        assert_eq!(get(&[0]), Some(rat(1, 1)));
        assert_eq!(get(&[1]), Some(rat(1, 1)));
        let xy = get(&[0, 1]).unwrap();
        let yx = get(&[1, 0]).unwrap();
        assert_eq!(xy - yx, rat(1, 2));
    }
}
