//! Presentations of the algebra A and the symmetric bimodule M.

pub mod builtin;
mod doc;
mod validate;

pub use builtin::{builtin, builtin_from_spec, Presentation};
pub use doc::{
    algebra_from_document, algebra_to_document, bimodule_from_document, bimodule_to_document,
    load_and_validate_algebra, load_and_validate_bimodule,
};

use crate::coeff::{format_scalar, CoefficientRing, Lin, Scalar};
use crate::error::{Error, Result};
use std::collections::HashMap;

/// Linear combination of basis elements, keyed by basis index.
pub type Comb = Lin<usize>;

/// Ordered basis with integer degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    names: Vec<String>,
    degrees: Vec<i64>,
    index: HashMap<String, usize>,
}

impl GradedBasis {
    pub fn new(entries: Vec<(String, i64)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Schema("a basis must be nonempty".into()));
        }
        let mut index = HashMap::new();
        for (i, (name, _)) in entries.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::Schema("basis names must be nonempty".into()));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::Schema(format!("duplicate basis name `{name}`")));
            }
        }
        let (names, degrees) = entries.into_iter().unzip();
        Ok(GradedBasis { names, degrees, index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str, what: &str) -> Result<usize> {
        self.lookup(name)
            .ok_or_else(|| Error::Schema(format!("unknown {what} basis element `{name}`")))
    }

    pub fn show(&self, c: &Comb) -> String {
        if c.is_zero() {
            return "0".into();
        }
        c.iter()
            .map(|(i, v)| format!("{}·{}", format_scalar(v), self.names[*i]))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A nonunital graded-commutative dg algebra given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    basis: GradedBasis,
    product: Vec<Vec<Comb>>,
    differential: Vec<Comb>,
}

impl AlgebraPresentation {
    /// Unvalidated constructor; see [`AlgebraPresentation::validate`].
    pub fn from_parts(basis: GradedBasis, product: Vec<Vec<Comb>>, differential: Vec<Comb>) -> Self {
        AlgebraPresentation { basis, product, differential }
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.basis.degree(i)
    }

    pub fn product(&self, a: usize, b: usize) -> &Comb {
        &self.product[a][b]
    }

    pub fn differential(&self, a: usize) -> &Comb {
        &self.differential[a]
    }

    pub fn has_differential(&self) -> bool {
        self.differential.iter().any(|c| !c.is_zero())
    }

    pub fn is_zero_product(&self) -> bool {
        self.product.iter().flatten().all(|c| c.is_zero())
    }

    /// Product of two combinations.
    pub fn mul(&self, x: &Comb, y: &Comb) -> Comb {
        let mut out = Comb::new();
        for (a, u) in x.iter() {
            for (b, v) in y.iter() {
                out.add_scaled(&self.product[*a][*b], &(u * v));
            }
        }
        out
    }

    pub fn d(&self, x: &Comb) -> Comb {
        let mut out = Comb::new();
        for (a, u) in x.iter() {
            out.add_scaled(&self.differential[*a], u);
        }
        out
    }

    /// Same presentation with every structure constant reduced into `ring`.
    pub fn reduced(&self, ring: CoefficientRing) -> Result<Self> {
        Ok(AlgebraPresentation {
            basis: self.basis.clone(),
            product: self
                .product
                .iter()
                .map(|row| row.iter().map(|c| reduce_comb(c, ring)).collect())
                .collect::<Result<_>>()?,
            differential: self.differential.iter().map(|c| reduce_comb(c, ring)).collect::<Result<_>>()?,
        })
    }

    pub fn validate(&self, ring: CoefficientRing) -> Result<()> {
        validate::algebra(self, ring)
    }
}

/// A symmetric A-bimodule given by its left action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimodulePresentation {
    basis: GradedBasis,
    action: Vec<Vec<Comb>>,
    differential: Vec<Comb>,
}

impl BimodulePresentation {
    pub fn from_parts(basis: GradedBasis, action: Vec<Vec<Comb>>, differential: Vec<Comb>) -> Self {
        BimodulePresentation { basis, action, differential }
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, m: usize) -> i64 {
        self.basis.degree(m)
    }

    /// a·m
    pub fn left(&self, a: usize, m: usize) -> &Comb {
        &self.action[a][m]
    }

    /// m·a = (−1)^{|a||m|} a·m
    pub fn right(&self, m: usize, a: usize, alg: &AlgebraPresentation) -> Comb {
        let mut c = self.action[a][m].clone();
        if (alg.degree(a) * self.degree(m)) % 2 != 0 {
            c.scale(&crate::coeff::int(-1));
        }
        c
    }

    pub fn differential(&self, m: usize) -> &Comb {
        &self.differential[m]
    }

    pub fn is_zero_action(&self) -> bool {
        self.action.iter().flatten().all(|c| c.is_zero())
    }

    pub fn act(&self, a: &Comb, m: &Comb) -> Comb {
        let mut out = Comb::new();
        for (x, u) in a.iter() {
            for (y, v) in m.iter() {
                out.add_scaled(&self.action[*x][*y], &(u * v));
            }
        }
        out
    }

    pub fn d(&self, m: &Comb) -> Comb {
        let mut out = Comb::new();
        for (x, u) in m.iter() {
            out.add_scaled(&self.differential[*x], u);
        }
        out
    }

    pub fn reduced(&self, ring: CoefficientRing) -> Result<Self> {
        Ok(BimodulePresentation {
            basis: self.basis.clone(),
            action: self
                .action
                .iter()
                .map(|row| row.iter().map(|c| reduce_comb(c, ring)).collect())
                .collect::<Result<_>>()?,
            differential: self.differential.iter().map(|c| reduce_comb(c, ring)).collect::<Result<_>>()?,
        })
    }

    pub fn validate(&self, alg: &AlgebraPresentation, ring: CoefficientRing) -> Result<()> {
        validate::bimodule(self, alg, ring)
    }
}

fn reduce_comb(c: &Comb, ring: CoefficientRing) -> Result<Comb> {
    c.iter().map(|(k, v)| Ok((*k, ring.reduce(v)?))).collect()
}

pub(crate) fn single(i: usize) -> Comb {
    let mut c = Comb::new();
    c.add(i, crate::coeff::int(1));
    c
}

pub(crate) fn scalar_comb(i: usize, v: Scalar) -> Comb {
    let mut c = Comb::new();
    c.add(i, v);
    c
}
