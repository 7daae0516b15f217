//! Standard presentations.

use super::{scalar_comb, single, AlgebraPresentation, BimodulePresentation, Comb, GradedBasis};
use crate::coeff::sign;
use crate::error::{Error, Result};

/// Result of [`builtin`].
#[derive(Clone, Debug)]
pub enum Presentation {
    Algebra(AlgebraPresentation),
    Bimodule(BimodulePresentation),
}

/// `g` generators of the given degrees with all products zero.
pub fn trivial_algebra(g: usize, degrees: &[i64]) -> Result<AlgebraPresentation> {
    if g == 0 || degrees.len() != g {
        return Err(Error::Invalid(format!("trivial_algebra needs {g} ≥ 1 degrees, got {}", degrees.len())));
    }
    if degrees.iter().any(|d| *d < 0) {
        return Err(Error::Invalid("degrees must be nonnegative".into()));
    }
    let basis = GradedBasis::new(degrees.iter().enumerate().map(|(i, d)| (format!("a{i}"), *d)).collect())?;
    Ok(AlgebraPresentation::from_parts(basis, vec![vec![Comb::new(); g]; g], vec![Comb::new(); g]))
}

/// Augmentation ideal of k[x]/(x^N) with x in the given even degree.
pub fn truncated_polynomial_in_degree(n: usize, degree: i64) -> Result<AlgebraPresentation> {
    if n < 2 {
        return Err(Error::Invalid("truncation order must be at least 2".into()));
    }
    if degree < 0 || degree % 2 != 0 {
        return Err(Error::Invalid("the polynomial generator needs an even nonnegative degree".into()));
    }
    let k = n - 1;
    let name = |p: usize| if p == 1 { "x".to_string() } else { format!("x{p}") };
    let basis = GradedBasis::new((1..=k).map(|p| (name(p), degree * p as i64)).collect())?;
    let mut product = vec![vec![Comb::new(); k]; k];
    for i in 1..=k {
        for j in 1..=k {
            if i + j <= k {
                product[i - 1][j - 1] = single(i + j - 1);
            }
        }
    }
    Ok(AlgebraPresentation::from_parts(basis, product, vec![Comb::new(); k]))
}

pub fn truncated_polynomial(n: usize) -> Result<AlgebraPresentation> {
    truncated_polynomial_in_degree(n, 0)
}

/// Augmentation ideal of the exterior algebra on one generator.
pub fn exterior_generator(degree: i64) -> Result<AlgebraPresentation> {
    if degree < 0 {
        return Err(Error::Invalid("degree must be nonnegative".into()));
    }
    let basis = GradedBasis::new(vec![("y".into(), degree)])?;
    Ok(AlgebraPresentation::from_parts(basis, vec![vec![Comb::new()]], vec![Comb::new()]))
}

/// Augmentation ideal of the graded-commutative monomial algebra
/// k[x1..xg]/(x_i^{b_i+1}); odd generators are exterior (b_i = 1 is forced).
pub fn monomial_algebra(degrees: &[i64], bounds: &[u32]) -> Result<AlgebraPresentation> {
    if degrees.is_empty() || degrees.len() != bounds.len() {
        return Err(Error::Invalid("monomial_algebra needs matching degrees and bounds".into()));
    }
    if degrees.iter().any(|d| *d < 0) || bounds.iter().any(|b| *b == 0) {
        return Err(Error::Invalid("degrees must be ≥ 0 and bounds ≥ 1".into()));
    }
    let bounds: Vec<u32> =
        degrees.iter().zip(bounds).map(|(d, b)| if d % 2 != 0 { 1 } else { *b }).collect();
    let mut exps: Vec<Vec<u32>> = vec![Vec::new()];
    for b in &bounds {
        exps = exps
            .into_iter()
            .flat_map(|e| (0..=*b).map(move |k| {
                let mut e = e.clone();
                e.push(k);
                e
            }))
            .collect();
    }
    exps.retain(|e| e.iter().any(|k| *k > 0));
    let deg = |e: &[u32]| e.iter().zip(degrees).map(|(k, d)| *k as i64 * d).sum::<i64>();
    exps.sort_by_key(|e| (deg(e), e.iter().map(|k| u32::MAX - k).collect::<Vec<_>>()));
    let name = |e: &[u32]| {
        e.iter()
            .enumerate()
            .filter(|(_, k)| **k > 0)
            .map(|(i, k)| if *k == 1 { format!("x{}", i + 1) } else { format!("x{}^{k}", i + 1) })
            .collect::<String>()
    };
    let basis = GradedBasis::new(exps.iter().map(|e| (name(e), deg(e))).collect())?;
    let odd: Vec<bool> = degrees.iter().map(|d| d % 2 != 0).collect();
    let n = exps.len();
    let mut product = vec![vec![Comb::new(); n]; n];
    for (a, e) in exps.iter().enumerate() {
        for (b, f) in exps.iter().enumerate() {
            let s: Vec<u32> = e.iter().zip(f).map(|(x, y)| x + y).collect();
            if s.iter().zip(&bounds).any(|(x, b)| x > b) {
                continue;
            }
            // Each odd factor of f moves past the odd factors of e with larger index.
            let mut swaps = 0u32;
            for j in 0..f.len() {
                if odd[j] && f[j] == 1 {
                    swaps += (j + 1..e.len()).filter(|i| odd[*i] && e[*i] == 1).count() as u32;
                }
            }
            let c = exps.iter().position(|x| *x == s).expect("in range");
            product[a][b] = scalar_comb(c, sign(swaps % 2 == 1));
        }
    }
    Ok(AlgebraPresentation::from_parts(basis, product, vec![Comb::new(); n]))
}

/// k[x]/(x^3) ⊗ Λ(y) with |x| = 0, |y| = 1 and dy = x.
pub fn koszul_dg_example() -> AlgebraPresentation {
    let a = monomial_algebra(&[0, 1], &[2, 1]).expect("valid");
    let x = a.basis().lookup("x1").unwrap();
    let y = a.basis().lookup("x2").unwrap();
    let x2 = a.basis().lookup("x1^2").unwrap();
    let xy = a.basis().lookup("x1x2").unwrap();
    let mut d = vec![Comb::new(); a.dim()];
    d[y] = single(x);
    d[xy] = single(x2);
    AlgebraPresentation::from_parts(
        a.basis().clone(),
        (0..a.dim()).map(|i| (0..a.dim()).map(|j| a.product(i, j).clone()).collect()).collect(),
        d,
    )
}

/// The one-dimensional module k in degree 0 with zero action.
pub fn trivial_coefficients(alg: &AlgebraPresentation) -> BimodulePresentation {
    let basis = GradedBasis::new(vec![("k".into(), 0)]).expect("valid");
    BimodulePresentation::from_parts(basis, vec![vec![Comb::new()]; alg.dim()], vec![Comb::new()])
}

/// A_+ = k·1 ⊕ A acting on itself.
pub fn unital_extension(alg: &AlgebraPresentation) -> BimodulePresentation {
    let n = alg.dim();
    let mut entries = vec![("1".to_string(), 0)];
    entries.extend((0..n).map(|i| (alg.basis().name(i).to_string(), alg.degree(i))));
    let basis = GradedBasis::new(entries).expect("names distinct from the unit");
    let shift = |c: &Comb| -> Comb { c.iter().map(|(k, v)| (k + 1, v.clone())).collect() };
    let action = (0..n)
        .map(|a| {
            let mut row = vec![single(a + 1)];
            row.extend((0..n).map(|b| shift(alg.product(a, b))));
            row
        })
        .collect();
    let mut differential = vec![Comb::new()];
    differential.extend((0..n).map(|a| shift(alg.differential(a))));
    BimodulePresentation::from_parts(basis, action, differential)
}

/// The linear dual M^∨ with (φ·a)(m) = φ(a·m) and d φ = −(−1)^{|φ|} φ∘d.
pub fn dual_bimodule(m: &BimodulePresentation, alg: &AlgebraPresentation) -> BimodulePresentation {
    let k = m.dim();
    let basis = GradedBasis::new(
        (0..k).map(|u| (format!("{}*", m.basis().name(u)), -m.degree(u))).collect(),
    )
    .expect("valid");
    let mut action = vec![vec![Comb::new(); k]; alg.dim()];
    for a in 0..alg.dim() {
        for u in 0..k {
            let s = sign(alg.degree(a) * m.degree(u) % 2 != 0);
            let mut c = Comb::new();
            for w in 0..k {
                c.add(w, m.left(a, w).get(&u) * &s);
            }
            action[a][u] = c;
        }
    }
    let mut differential = vec![Comb::new(); k];
    for u in 0..k {
        let s = -sign(m.degree(u) % 2 != 0);
        let mut c = Comb::new();
        for w in 0..k {
            c.add(w, m.differential(w).get(&u) * &s);
        }
        differential[u] = c;
    }
    BimodulePresentation::from_parts(basis, action, differential)
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| x.trim().parse::<T>().map_err(|_| Error::Invalid(format!("bad parameter `{x}`"))))
        .collect()
}

fn param<T: std::str::FromStr>(params: &[&str], i: usize, name: &str) -> Result<T> {
    params
        .get(i)
        .ok_or_else(|| Error::Invalid(format!("{name}: missing parameter {}", i + 1)))?
        .trim()
        .parse()
        .map_err(|_| Error::Invalid(format!("{name}: bad parameter `{}`", params[i])))
}

/// Look up a standard presentation by name. Module builtins need the algebra.
///
/// Algebras: `trivial_algebra` (g, degrees), `truncated_polynomial` (N
/// [, degree]), `exterior_generator` (degree), `monomial_algebra` (degrees,
/// bounds), `koszul_dg_example`. Modules: `trivial_coefficients`,
/// `unital_extension`, `dual_unital_extension`.
pub fn builtin(name: &str, params: &[&str], alg: Option<&AlgebraPresentation>) -> Result<Presentation> {
    let need_alg = || alg.ok_or_else(|| Error::Invalid(format!("{name} needs an algebra")));
    Ok(match name {
        "trivial_algebra" => {
            let g: usize = param(params, 0, name)?;
            let degrees = match params.get(1) {
                Some(s) => parse_list(s)?,
                None => vec![0; g],
            };
            Presentation::Algebra(trivial_algebra(g, &degrees)?)
        }
        "truncated_polynomial" => {
            let n: usize = param(params, 0, name)?;
            let degree: i64 = if params.len() > 1 { param(params, 1, name)? } else { 0 };
            Presentation::Algebra(truncated_polynomial_in_degree(n, degree)?)
        }
        "exterior_generator" => Presentation::Algebra(exterior_generator(param(params, 0, name)?)?),
        "monomial_algebra" => {
            let degrees: Vec<i64> = parse_list(params.first().copied().unwrap_or(""))?;
            let bounds: Vec<u32> = parse_list(params.get(1).copied().unwrap_or(""))?;
            Presentation::Algebra(monomial_algebra(&degrees, &bounds)?)
        }
        "koszul_dg_example" => Presentation::Algebra(koszul_dg_example()),
        "trivial_coefficients" => Presentation::Bimodule(trivial_coefficients(need_alg()?)),
        "unital_extension" => Presentation::Bimodule(unital_extension(need_alg()?)),
        "dual_unital_extension" => {
            let a = need_alg()?;
            Presentation::Bimodule(dual_bimodule(&unital_extension(a), a))
        }
        other => return Err(Error::Invalid(format!("unknown builtin `{other}`"))),
    })
}

/// Parse `name:param:param` into a builtin.
pub fn builtin_from_spec(spec: &str, alg: Option<&AlgebraPresentation>) -> Result<Presentation> {
    let mut parts = spec.split(':');
    let name = parts.next().unwrap_or("");
    let params: Vec<&str> = parts.collect();
    builtin(name, &params, alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{int, CoefficientRing};

    const Q: CoefficientRing = CoefficientRing::Rationals;

    #[test]
    fn builtins_validate() {
        let algebras = vec![
            trivial_algebra(1, &[0]).unwrap(),
            trivial_algebra(2, &[1, 2]).unwrap(),
            truncated_polynomial(3).unwrap(),
            truncated_polynomial_in_degree(4, 2).unwrap(),
            exterior_generator(3).unwrap(),
            monomial_algebra(&[1, 0], &[1, 2]).unwrap(),
            monomial_algebra(&[1, 1, 2], &[1, 1, 1]).unwrap(),
            koszul_dg_example(),
        ];
        for a in &algebras {
            a.validate(Q).unwrap();
            trivial_coefficients(a).validate(a, Q).unwrap();
            let ap = unital_extension(a);
            ap.validate(a, Q).unwrap();
            dual_bimodule(&ap, a).validate(a, Q).unwrap();
        }
    }

    #[test]
    fn truncated_polynomial_shape() {
        let a = truncated_polynomial(3).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.product(0, 0), &single(1));
        assert!(a.product(0, 1).is_zero() && a.product(1, 1).is_zero());
        assert_eq!(unital_extension(&a).dim(), 3);
    }

    #[test]
    fn exterior_signs() {
        let a = monomial_algebra(&[1, 1], &[1, 1]).unwrap();
        let x = a.basis().lookup("x1").unwrap();
        let y = a.basis().lookup("x2").unwrap();
        let xy = a.basis().lookup("x1x2").unwrap();
        assert_eq!(a.product(x, y), &single(xy));
        assert_eq!(a.product(y, x), &scalar_comb(xy, int(-1)));
        assert!(a.product(x, x).is_zero());
    }

    #[test]
    fn spec_strings() {
        assert!(matches!(builtin_from_spec("truncated_polynomial:4", None), Ok(Presentation::Algebra(_))));
        assert!(builtin_from_spec("unital_extension", None).is_err());
        assert!(builtin_from_spec("nope", None).is_err());
    }
}
