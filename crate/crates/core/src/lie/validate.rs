use serde::Serialize;

use super::lcs::series_with_limit;
use super::LieAlgebraSpec;
use crate::exact::Rational;

/// Outcome of one structural check, with human-readable failure lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub passed: bool,
    pub failures: Vec<String>,
}

impl Check {
    fn from_failures(failures: Vec<String>) -> Self {
        Check { passed: failures.is_empty(), failures }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub stated_class: usize,
    /// Length of the lower central series before it vanishes, if it does
    /// within `dim + 1` steps.
    pub computed_class: Option<usize>,
    pub antisymmetry: Check,
    pub jacobi: Check,
    pub grading: Check,
    pub nilpotency: Check,
    pub lcs_adapted: Check,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        [&self.antisymmetry, &self.jacobi, &self.grading, &self.nilpotency, &self.lcs_adapted]
            .iter()
            .all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, c) in [
            ("antisymmetry", &self.antisymmetry),
            ("jacobi", &self.jacobi),
            ("grading", &self.grading),
            ("nilpotency", &self.nilpotency),
            ("lcs_adapted", &self.lcs_adapted),
        ] {
            out.extend(c.failures.iter().map(|f| format!("{name}: {f}")));
        }
        out
    }
}

pub fn validate(spec: &LieAlgebraSpec) -> ValidationReport {
    let n = spec.dim();
    let label = |a: usize| spec.label(a).to_string();

    let mut anti = Vec::new();
    for a in 0..n {
        if !spec.bracket_basis(a, a).is_empty() {
            anti.push(format!("[{0},{0}] != 0", label(a)));
        }
        for b in a + 1..n {
            let ab = spec.bracket_basis(a, b);
            let ba = spec.bracket_basis(b, a);
            let neg: Vec<(usize, Rational)> = ba.iter().map(|(k, c)| (*k, -c.clone())).collect();
            if *ab != neg {
                anti.push(format!("[{},{}] != -[{},{}]", label(a), label(b), label(b), label(a)));
            }
        }
    }

    let mut jacobi = Vec::new();
    let unit = |a: usize| -> Vec<Rational> {
        (0..n).map(|i| if i == a { crate::exact::int(1) } else { crate::exact::int(0) }).collect()
    };
    let units: Vec<Vec<Rational>> = (0..n).map(unit).collect();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let j1 = spec.bracket_vectors(&units[a], &spec.bracket_vectors(&units[b], &units[c]));
                let j2 = spec.bracket_vectors(&units[b], &spec.bracket_vectors(&units[c], &units[a]));
                let j3 = spec.bracket_vectors(&units[c], &spec.bracket_vectors(&units[a], &units[b]));
                let nonzero = j1.iter().zip(&j2).zip(&j3).any(|((x, y), z)| !num_traits::Zero::is_zero(&(x + y + z)));
                if nonzero {
                    jacobi.push(format!("Jacobi fails on {}, {}, {}", label(a), label(b), label(c)));
                }
            }
        }
    }

    let mut grading = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let need = spec.level(a) + spec.level(b);
            if let Some((k, _)) = spec.bracket_basis(a, b).iter().find(|(k, _)| spec.level(*k) < need) {
                grading.push(format!("[{},{}] has a component on {} below level {need}", label(a), label(b), label(*k)));
            }
        }
    }

    let class = spec.class();
    let (series, done) = series_with_limit(spec, n + 2);
    let computed_class = done.then(|| series.len() - 1);
    let mut nil = Vec::new();
    match computed_class {
        None => nil.push(format!("lower central series does not vanish within {} steps", n + 1)),
        Some(c) if c != class => nil.push(format!("stated class {class} but lower central series gives class {c}")),
        Some(_) => {}
    }

    let mut adapted = Vec::new();
    for (i, sub) in series.iter().enumerate().take(class + 1) {
        let level = i + 1;
        let above: usize = spec.ranks().iter().skip(i).sum();
        if sub.dim() != above {
            adapted.push(format!("dim g_[{level}] = {} but the basis has {above} vectors of level >= {level}", sub.dim()));
        }
    }
    for i in series.len()..=class {
        let above: usize = spec.ranks().iter().skip(i).sum();
        if above != 0 {
            adapted.push(format!("g_[{}] = 0 but the basis has {above} vectors of level >= {}", i + 1, i + 1));
        }
    }
    if spec.ranks().first().copied().unwrap_or(0) == 0 && n > 0 {
        adapted.push("no level-1 generators".into());
    }

    ValidationReport {
        stated_class: class,
        computed_class,
        antisymmetry: Check::from_failures(anti),
        jacobi: Check::from_failures(jacobi),
        grading: Check::from_failures(grading),
        nilpotency: Check::from_failures(nil),
        lcs_adapted: Check::from_failures(adapted),
    }
}
