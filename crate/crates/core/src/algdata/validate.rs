use super::{AlgebraPresentation, BimodulePresentation, Comb, GradedBasis};
use crate::coeff::{int, CoefficientRing};
use crate::error::{Error, Result};

fn zero_in(c: &Comb, ring: CoefficientRing) -> bool {
    c.iter().all(|(_, v)| ring.is_zero(v))
}

fn diff(a: &Comb, b: &Comb) -> Comb {
    let mut d = a.clone();
    d.add_scaled(b, &int(-1));
    d
}

fn check_equal(
    axiom: &str,
    at: String,
    lhs: &Comb,
    rhs: &Comb,
    basis: &GradedBasis,
    ring: CoefficientRing,
) -> Result<()> {
    if zero_in(&diff(lhs, rhs), ring) {
        Ok(())
    } else {
        Err(Error::Axiom { axiom: axiom.into(), at, lhs: basis.show(lhs), rhs: basis.show(rhs) })
    }
}

fn check_degree(
    what: &str,
    at: String,
    c: &Comb,
    expected: i64,
    basis: &GradedBasis,
) -> Result<()> {
    for (k, _) in c.iter() {
        if basis.degree(*k) != expected {
            return Err(Error::Axiom {
                axiom: what.into(),
                at,
                lhs: format!("degree {} of {}", basis.degree(*k), basis.name(*k)),
                rhs: format!("expected degree {expected}"),
            });
        }
    }
    Ok(())
}

fn koszul(odd: bool) -> crate::coeff::Scalar {
    crate::coeff::sign(odd)
}

pub(super) fn algebra(a: &AlgebraPresentation, ring: CoefficientRing) -> Result<()> {
    let b = a.basis();
    let n = b.len();
    let name = |i: usize| b.name(i).to_string();
    for i in 0..n {
        if b.degree(i) < 0 {
            return Err(Error::Schema(format!(
                "algebra basis element `{}` has negative degree; only nonnegatively graded algebras are supported",
                name(i)
            )));
        }
    }
    for x in 0..n {
        check_degree(
            "differential lowers degree by one",
            format!("d({})", name(x)),
            a.differential(x),
            b.degree(x) - 1,
            b,
        )?;
        for y in 0..n {
            check_degree(
                "degree additivity",
                format!("({}, {})", name(x), name(y)),
                a.product(x, y),
                b.degree(x) + b.degree(y),
                b,
            )?;
        }
    }
    for x in 0..n {
        for y in 0..n {
            let mut swapped = a.product(y, x).clone();
            swapped.scale(&koszul(b.degree(x) * b.degree(y) % 2 != 0));
            check_equal(
                "graded commutativity",
                format!("({}, {})", name(x), name(y)),
                a.product(x, y),
                &swapped,
                b,
                ring,
            )?;
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = a.mul(a.product(x, y), &super::single(z));
                let rhs = a.mul(&super::single(x), a.product(y, z));
                check_equal(
                    "associativity",
                    format!("({}, {}, {})", name(x), name(y), name(z)),
                    &lhs,
                    &rhs,
                    b,
                    ring,
                )?;
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let lhs = a.d(a.product(x, y));
            let mut rhs = a.mul(a.differential(x), &super::single(y));
            rhs.add_scaled(
                &a.mul(&super::single(x), a.differential(y)),
                &koszul(b.degree(x) % 2 != 0),
            );
            check_equal("Leibniz rule", format!("({}, {})", name(x), name(y)), &lhs, &rhs, b, ring)?;
        }
        check_equal(
            "d² = 0",
            format!("({})", name(x)),
            &a.d(a.differential(x)),
            &Comb::new(),
            b,
            ring,
        )?;
    }
    Ok(())
}

pub(super) fn bimodule(
    m: &BimodulePresentation,
    a: &AlgebraPresentation,
    ring: CoefficientRing,
) -> Result<()> {
    let mb = m.basis();
    let ab = a.basis();
    for u in 0..mb.len() {
        check_degree(
            "differential lowers degree by one",
            format!("d({})", mb.name(u)),
            m.differential(u),
            mb.degree(u) - 1,
            mb,
        )?;
        for x in 0..ab.len() {
            check_degree(
                "degree additivity",
                format!("({}, {})", ab.name(x), mb.name(u)),
                m.left(x, u),
                ab.degree(x) + mb.degree(u),
                mb,
            )?;
        }
    }
    for x in 0..ab.len() {
        for y in 0..ab.len() {
            for u in 0..mb.len() {
                let lhs = m.act(a.product(x, y), &super::single(u));
                let rhs = m.act(&super::single(x), m.left(y, u));
                check_equal(
                    "action associativity",
                    format!("({}, {}, {})", ab.name(x), ab.name(y), mb.name(u)),
                    &lhs,
                    &rhs,
                    mb,
                    ring,
                )?;
            }
        }
    }
    for x in 0..ab.len() {
        for u in 0..mb.len() {
            let lhs = m.d(m.left(x, u));
            let mut rhs = m.act(a.differential(x), &super::single(u));
            rhs.add_scaled(
                &m.act(&super::single(x), m.differential(u)),
                &koszul(ab.degree(x) % 2 != 0),
            );
            check_equal(
                "Leibniz rule",
                format!("({}, {})", ab.name(x), mb.name(u)),
                &lhs,
                &rhs,
                mb,
                ring,
            )?;
        }
    }
    for u in 0..mb.len() {
        check_equal(
            "d² = 0",
            format!("({})", mb.name(u)),
            &m.d(m.differential(u)),
            &Comb::new(),
            mb,
            ring,
        )?;
    }
    Ok(())
}
