use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{LieAlgebraSpec, SparseVec};
use crate::exact::Rational;

/// A Hall element: a generator or the bracket of two earlier Hall elements,
/// referenced by their position in the basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HallWord {
    Letter(usize),
    Bracket(usize, usize),
}

/// Hall basis of the free Lie algebra on `n` letters, truncated at degree `c`.
///
/// Elements are ordered by degree, and within a degree by the positions of
/// their two factors. `[u, v]` is a Hall element when `u < v` and, if
/// `v = [v1, v2]`, also `v1 <= u`. Brackets are right-nested, so degree 3 on
/// two letters gives `[x1,[x1,x2]]` and `[x2,[x1,x2]]`.
#[derive(Debug, Clone)]
pub struct HallBasis {
    n: usize,
    class: usize,
    words: Vec<HallWord>,
    degrees: Vec<usize>,
    index: HashMap<(usize, usize), usize>,
}

impl HallBasis {
    pub fn new(n: usize, class: usize) -> Self {
        let mut words: Vec<HallWord> = (0..n).map(HallWord::Letter).collect();
        let mut degrees = vec![1; n];
        let mut index = HashMap::new();
        if n == 0 {
            return HallBasis { n, class, words, degrees, index };
        }
        for k in 2..=class {
            let len = words.len();
            for u in 0..len {
                for v in u + 1..len {
                    if degrees[u] + degrees[v] != k {
                        continue;
                    }
                    let ok = match words[v] {
                        HallWord::Letter(_) => true,
                        HallWord::Bracket(v1, _) => v1 <= u,
                    };
                    if ok {
                        index.insert((u, v), words.len());
                        words.push(HallWord::Bracket(u, v));
                        degrees.push(k);
                    }
                }
            }
        }
        HallBasis { n, class, words, degrees, index }
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[HallWord] {
        &self.words
    }

    pub fn degree(&self, a: usize) -> usize {
        self.degrees[a]
    }

    /// Number of Hall elements of each degree `1..=class`.
    pub fn level_counts(&self) -> Vec<usize> {
        (1..=self.class).map(|k| self.degrees.iter().filter(|&&d| d == k).count()).collect()
    }

    /// The letters of the word in order, `x1` being letter 0.
    pub fn letters(&self, a: usize) -> Vec<usize> {
        match self.words[a] {
            HallWord::Letter(i) => vec![i],
            HallWord::Bracket(u, v) => {
                let mut out = self.letters(u);
                out.extend(self.letters(v));
                out
            }
        }
    }

    pub fn display(&self, a: usize) -> String {
        match self.words[a] {
            HallWord::Letter(i) => format!("x{}", i + 1),
            HallWord::Bracket(u, v) => format!("[{},{}]", self.display(u), self.display(v)),
        }
    }

    /// The bracket of two Hall elements as a combination of Hall elements,
    /// with everything above degree `class` discarded.
    fn rewrite(&self, a: usize, b: usize, memo: &mut HashMap<(usize, usize), SparseVec>) -> SparseVec {
        if a == b || self.degrees[a] + self.degrees[b] > self.class {
            return Vec::new();
        }
        if a > b {
            return negate(&self.rewrite(b, a, memo));
        }
        if let Some(v) = memo.get(&(a, b)) {
            return v.clone();
        }
        let result = if let Some(&k) = self.index.get(&(a, b)) {
            vec![(k, Rational::one())]
        } else {
            let HallWord::Bracket(b1, b2) = self.words[b] else {
                unreachable!("a bracket with a letter on the right is always a Hall element")
            };
            // [a,[b1,b2]] = [[a,b1],b2] + [b1,[a,b2]]
            let mut acc: HashMap<usize, Rational> = HashMap::new();
            for (h, c) in self.rewrite(a, b1, memo) {
                for (k, d) in self.rewrite(h, b2, memo) {
                    *acc.entry(k).or_insert_with(Rational::zero) += &c * d;
                }
            }
            for (h, c) in self.rewrite(a, b2, memo) {
                for (k, d) in self.rewrite(b1, h, memo) {
                    *acc.entry(k).or_insert_with(Rational::zero) += &c * d;
                }
            }
            let mut v: SparseVec = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            v.sort_by_key(|(k, _)| *k);
            v
        };
        memo.insert((a, b), result.clone());
        result
    }

    /// Structure constants of the free nilpotent algebra on this basis.
    pub fn spec(&self) -> LieAlgebraSpec {
        let mut spec = LieAlgebraSpec::with_ranks(self.level_counts());
        let mut memo = HashMap::new();
        let len = self.len();
        for a in 0..len {
            for b in a + 1..len {
                let v = self.rewrite(a, b, &mut memo);
                if !v.is_empty() {
                    spec.set_bracket(a, b, v);
                }
            }
        }
        spec
    }
}

fn negate(v: &SparseVec) -> SparseVec {
    v.iter().map(|(k, c)| (*k, -c.clone())).collect()
}

impl fmt::Display for HallBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.len()).map(|a| self.display(a)).collect();
        write!(f, "{}", names.join(", "))
    }
}

/// The free nilpotent Lie algebra `f_n(c)` on its Hall basis.
pub fn free_nilpotent(n: usize, c: usize) -> LieAlgebraSpec {
    HallBasis::new(n, c).spec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::exact::{int, EchelonBasis};
    use crate::lie::{validate, WordPoly};

    fn mobius(k: usize) -> i64 {
        let mut m = k;
        let mut sign = 1;
        let mut p = 2;
        while p * p <= m {
            if m.is_multiple_of(p) {
                m /= p;
                if m.is_multiple_of(p) {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if m > 1 {
            sign = -sign;
        }
        sign
    }

    fn witt(n: usize, k: usize) -> usize {
        let total: i64 = (1..=k).filter(|d| k.is_multiple_of(*d)).map(|d| mobius(d) * (n as i64).pow((k / d) as u32)).sum();
        (total / k as i64) as usize
    }

    #[test]
    fn small_cases() {
        let b = HallBasis::new(2, 3);
        assert_eq!(b.to_string(), "x1, x2, [x1,x2], [x1,[x1,x2]], [x2,[x1,x2]]");
        assert_eq!(free_nilpotent(2, 3).ranks(), &[2, 1, 2]);
        assert_eq!(free_nilpotent(2, 2), corpus::heisenberg());
        assert_eq!(free_nilpotent(1, 5).dim(), 1);
    }

    #[test]
    fn level_counts_match_witt() {
        for (n, c) in [(2, 6), (3, 4), (4, 3), (5, 2)] {
            let got = HallBasis::new(n, c).level_counts();
            let want: Vec<usize> = (1..=c).map(|k| witt(n, k)).collect();
            assert_eq!(got, want, "n={n} c={c}");
        }
    }

    #[test]
    fn free_algebras_validate() {
        for (n, c) in [(2, 2), (2, 3), (2, 4), (2, 5), (3, 3), (3, 4)] {
            let r = validate(&free_nilpotent(n, c));
            assert!(r.all_passed(), "n={n} c={c}: {:?}", r.failures());
            assert_eq!(r.computed_class, Some(c));
        }
    }

    // Expansion of a Hall element as a Lie polynomial in the free associative algebra.
    fn expand(b: &HallBasis, a: usize, cache: &mut Vec<Option<WordPoly>>) -> WordPoly {
        if let Some(p) = &cache[a] {
            return p.clone();
        }
        let p = match b.words()[a] {
            HallWord::Letter(i) => WordPoly::letter(b.class(), i as u8),
            HallWord::Bracket(u, v) => expand(b, u, cache).commutator(&expand(b, v, cache)),
        };
        cache[a] = Some(p.clone());
        p
    }

    #[test]
    fn table_agrees_with_associative_expansion() {
        for (n, c) in [(2, 5), (3, 4)] {
            let b = HallBasis::new(n, c);
            let spec = b.spec();
            let mut cache = vec![None; b.len()];
            let exps: Vec<WordPoly> = (0..b.len()).map(|a| expand(&b, a, &mut cache)).collect();

            let mut ech = EchelonBasis::new();
            for e in &exps {
                assert!(ech.insert(e.terms().map(|(w, c)| (w.clone(), c.clone())).collect()));
            }

            for x in 0..b.len() {
                for y in 0..b.len() {
                    let lhs = exps[x].commutator(&exps[y]);
                    let mut rhs = WordPoly::zero(c);
                    for (k, coef) in spec.bracket_basis(x, y) {
                        rhs = rhs.add(&exps[*k].scale(coef));
                    }
                    assert_eq!(lhs, rhs, "[{},{}]", b.display(x), b.display(y));
                }
            }
        }
    }

    #[test]
    fn generator_maps_extend_to_morphisms() {
        // f_2(3) -> U_4 sending x1, x2 to arbitrary elements of U_4 (class 3)
        let f = free_nilpotent(2, 3);
        let b = HallBasis::new(2, 3);
        let u4 = corpus::unitriangular(4);
        let gens = [
            vec![int(1), int(2), int(0), int(3), int(0), int(1)],
            vec![int(-1), int(1), int(5), int(0), int(2), int(7)],
        ];
        let mut img: Vec<Vec<Rational>> = Vec::new();
        for w in b.words() {
            let v = match *w {
                HallWord::Letter(i) => gens[i].clone(),
                HallWord::Bracket(u, v) => u4.bracket_vectors(&img[u], &img[v]),
            };
            img.push(v);
        }
        for x in 0..f.dim() {
            for y in 0..f.dim() {
                let lhs = u4.bracket_vectors(&img[x], &img[y]);
                let mut rhs = vec![int(0); u4.dim()];
                for (k, c) in f.bracket_basis(x, y) {
                    for (r, v) in rhs.iter_mut().zip(&img[*k]) {
                        *r += c * v;
                    }
                }
                assert_eq!(lhs, rhs);
            }
        }
    }
}
