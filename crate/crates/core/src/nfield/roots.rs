//! Factorization of polynomials over a number field into irreducibles, by
//! shifting until the norm to ℚ is square-free, factoring the norm over ℚ,
//! and taking greatest common divisors back in K[x].

use num_traits::One;

use crate::exact::arith::format_rational;
use crate::exact::factor::factor_over_q;
use crate::exact::{Poly, QPoly, Rational};

use super::field::{FieldElement, NumberField};

pub type KPoly = Poly<FieldElement>;

/// Monic irreducible factors of the square-free part of a polynomial,
/// split into roots (from linear factors) and higher-degree factors.
#[derive(Clone, Debug)]
pub struct FieldFactorization {
    /// Distinct roots in K, in descending coordinate order.
    pub roots: Vec<FieldElement>,
    /// Irreducible factors of degree at least 2, by ascending degree.
    pub nonlinear: Vec<KPoly>,
}

fn interpolate(points: &[(Rational, Rational)]) -> QPoly {
    let n = points.len();
    let mut coef: Vec<Rational> = points.iter().map(|p| p.1.clone()).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&points[i].0 - &points[i - j].0);
        }
    }
    let mut acc = QPoly::constant(coef[n - 1].clone());
    for i in (0..n - 1).rev() {
        acc = acc.mul(&QPoly::linear(&points[i].0)).add(&QPoly::constant(coef[i].clone()));
    }
    acc
}

/// N_{K/ℚ} of a polynomial over K, as a polynomial over ℚ.
pub fn norm_poly(g: &KPoly) -> QPoly {
    let k = g.lead().expect("nonzero polynomial").field().clone();
    let deg = g.degree().unwrap() * k.degree();
    let points: Vec<(Rational, Rational)> = (0..=deg as i64)
        .map(|t| {
            let x = Rational::from_integer(t.into());
            (x.clone(), g.eval(&k.from_rational(x)).norm())
        })
        .collect();
    interpolate(&points)
}

fn lift_qpoly(k: &NumberField, p: &QPoly) -> KPoly {
    Poly::new(p.coeffs().iter().map(|c| k.from_rational(c.clone())).collect())
}

fn squarefree_part(g: &KPoly) -> KPoly {
    let d = g.gcd(&g.derivative());
    g.divrem(&d).0.monic()
}

fn shifts() -> impl Iterator<Item = i64> {
    (0..).map(|i: i64| if i % 2 == 1 { (i + 1) / 2 } else { -i / 2 })
}

pub fn factor_over_field(g: &KPoly) -> FieldFactorization {
    let k = g.lead().expect("nonzero polynomial").field().clone();
    let sf = squarefree_part(g);
    let mut factors: Vec<KPoly> = Vec::new();
    if sf.degree().unwrap_or(0) == 0 {
        return FieldFactorization { roots: Vec::new(), nonlinear: Vec::new() };
    }
    if k.is_rationals() {
        let q = QPoly::new(sf.coeffs().iter().map(|c| c.coords()[0].clone()).collect());
        for (f, _) in factor_over_q(&q) {
            factors.push(lift_qpoly(&k, &QPoly::from_ints(&f)).monic());
        }
    } else {
        let alpha = k.generator();
        for s in shifts() {
            let sa = &k.from_int(s) * &alpha;
            let gs = sf.shift(&-&sa);
            let n = norm_poly(&gs);
            if n.gcd(&n.derivative()).degree() != Some(0) {
                continue;
            }
            for (nj, _) in factor_over_q(&n) {
                let h = gs.gcd(&lift_qpoly(&k, &QPoly::from_ints(&nj)));
                if h.degree().unwrap_or(0) >= 1 {
                    factors.push(h.shift(&sa).monic());
                }
            }
            break;
        }
    }
    let mut roots = Vec::new();
    let mut nonlinear = Vec::new();
    for f in factors {
        if f.degree() == Some(1) {
            roots.push(-&f.coeffs()[0]);
        } else {
            nonlinear.push(f);
        }
    }
    roots.sort_by(|a, b| b.cmp_coords(a));
    nonlinear.sort_by_key(|f| f.degree());
    FieldFactorization { roots, nonlinear }
}

/// Human-readable form in the variable x, with non-rational coefficients
/// parenthesised.
pub fn kpoly_to_string(p: &KPoly) -> String {
    let mut terms = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        let t = match c.as_rational() {
            Some(r) if i > 0 && r.is_one() => mono,
            Some(r) if i > 0 && *r == -Rational::one() => format!("-{mono}"),
            Some(r) => format!("{}{mono}", format_rational(r)),
            None if i == 0 => format!("({c})"),
            None => format!("({c}){mono}"),
        };
        terms.push(t);
    }
    if terms.is_empty() {
        return "0".into();
    }
    terms.join(" + ").replace("+ -", "- ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::IntPoly;

    fn field(c: &[i64]) -> NumberField {
        NumberField::new(IntPoly::from_i64(c).unwrap()).unwrap()
    }

    fn kpoly(k: &NumberField, c: &[i64]) -> KPoly {
        Poly::new(c.iter().map(|&x| k.from_int(x)).collect())
    }

    #[test]
    fn roots_over_rationals() {
        let q = NumberField::rationals();
        let f = factor_over_field(&kpoly(&q, &[-1, 0, 1]));
        assert_eq!(f.roots, vec![q.from_int(1), q.from_int(-1)]);
        let f = factor_over_field(&kpoly(&q, &[1, 0, 1]));
        assert!(f.roots.is_empty());
        assert_eq!(kpoly_to_string(&f.nonlinear[0]), "x^2 + 1");
    }

    #[test]
    fn roots_in_extensions() {
        let k = field(&[1, 0, 1]);
        let i = k.generator();
        let f = factor_over_field(&kpoly(&k, &[1, 0, 1]));
        assert_eq!(f.roots, vec![i.clone(), -&i]);
        // x^2 - 4x + 5 = (x - 2 - i)(x - 2 + i)
        let f = factor_over_field(&kpoly(&k, &[5, -4, 1]));
        assert_eq!(f.roots, vec![&k.from_int(2) + &i, &k.from_int(2) - &i]);
        // x^2 - 2 has no root in Q(i)
        let f = factor_over_field(&kpoly(&k, &[-2, 0, 1]));
        assert!(f.roots.is_empty());
        assert_eq!(f.nonlinear.len(), 1);
        // x^4 - 1 over Q(i): four roots
        let f = factor_over_field(&kpoly(&k, &[-1, 0, 0, 0, 1]));
        assert_eq!(f.roots.len(), 4);
    }

    #[test]
    fn cube_root_field_has_one_real_root() {
        let k = field(&[-2, 0, 0, 1]);
        let f = factor_over_field(&kpoly(&k, &[-2, 0, 0, 1]));
        assert_eq!(f.roots, vec![k.generator()]);
        assert_eq!(f.nonlinear.len(), 1);
        assert_eq!(f.nonlinear[0].degree(), Some(2));
    }

    #[test]
    fn norm_of_linear_polynomial() {
        let k = field(&[-2, 0, 1]);
        let g = Poly::new(vec![-&k.generator(), k.one()]);
        let n = norm_poly(&g);
        assert_eq!(n, QPoly::from_ints(&[(-2).into(), 0.into(), 1.into()]));
    }
}
