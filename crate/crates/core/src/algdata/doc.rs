use super::{AlgebraPresentation, BimodulePresentation, Comb, GradedBasis};
use crate::coeff::{format_scalar, parse_scalar, sign, CoefficientRing};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BasisDoc {
    name: String,
    degree: i64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffDoc {
    Text(String),
    Int(i64),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    basis: String,
    coeff: CoeffDoc,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProductDoc {
    left: String,
    right: String,
    result: Vec<TermDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiffDoc {
    on: String,
    result: Vec<TermDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDoc {
    basis: Vec<BasisDoc>,
    #[serde(default)]
    products: Vec<ProductDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    differential: Option<Vec<DiffDoc>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionDoc {
    algebra: String,
    module: String,
    result: Vec<TermDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BimoduleDoc {
    basis: Vec<BasisDoc>,
    #[serde(default)]
    action: Vec<ActionDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    differential: Option<Vec<DiffDoc>>,
}

fn basis_of(docs: &[BasisDoc]) -> Result<GradedBasis> {
    GradedBasis::new(docs.iter().map(|b| (b.name.clone(), b.degree)).collect())
}

fn comb_of(terms: &[TermDoc], basis: &GradedBasis) -> Result<Comb> {
    let mut c = Comb::new();
    for t in terms {
        let k = basis.require(&t.basis, "result")?;
        let v = match &t.coeff {
            CoeffDoc::Text(s) => parse_scalar(s)?,
            CoeffDoc::Int(i) => crate::coeff::int(*i),
        };
        c.add(k, v);
    }
    Ok(c)
}

fn terms_of(c: &Comb, basis: &GradedBasis) -> Vec<TermDoc> {
    c.iter()
        .map(|(k, v)| TermDoc {
            basis: basis.name(*k).to_string(),
            coeff: CoeffDoc::Text(format_scalar(v)),
        })
        .collect()
}

fn differential_of(docs: &Option<Vec<DiffDoc>>, basis: &GradedBasis) -> Result<Vec<Comb>> {
    let mut d = vec![Comb::new(); basis.len()];
    let mut seen = vec![false; basis.len()];
    for e in docs.iter().flatten() {
        let x = basis.require(&e.on, "differential source")?;
        if std::mem::replace(&mut seen[x], true) {
            return Err(Error::Schema(format!("differential of `{}` given twice", e.on)));
        }
        d[x] = comb_of(&e.result, basis)?;
    }
    Ok(d)
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
}

/// Parse an algebra document without validating axioms. Missing products
/// are zero; a product given in one order only is filled in by symmetry.
pub fn algebra_from_document(text: &str) -> Result<AlgebraPresentation> {
    let doc: AlgebraDoc = parse_json(text)?;
    let basis = basis_of(&doc.basis)?;
    let n = basis.len();
    let mut given: Vec<Vec<Option<Comb>>> = vec![vec![None; n]; n];
    for p in &doc.products {
        let a = basis.require(&p.left, "product")?;
        let b = basis.require(&p.right, "product")?;
        if given[a][b].is_some() {
            return Err(Error::Schema(format!("product ({}, {}) given twice", p.left, p.right)));
        }
        given[a][b] = Some(comb_of(&p.result, &basis)?);
    }
    let mut product = vec![vec![Comb::new(); n]; n];
    for a in 0..n {
        for b in 0..n {
            product[a][b] = match (&given[a][b], &given[b][a]) {
                (Some(c), _) => c.clone(),
                (None, Some(c)) => {
                    let mut c = c.clone();
                    c.scale(&sign(basis.degree(a) * basis.degree(b) % 2 != 0));
                    c
                }
                (None, None) => Comb::new(),
            };
        }
    }
    let differential = differential_of(&doc.differential, &basis)?;
    Ok(AlgebraPresentation::from_parts(basis, product, differential))
}

pub fn bimodule_from_document(text: &str, alg: &AlgebraPresentation) -> Result<BimodulePresentation> {
    let doc: BimoduleDoc = parse_json(text)?;
    let basis = basis_of(&doc.basis)?;
    let mut action = vec![vec![Comb::new(); basis.len()]; alg.dim()];
    let mut seen = vec![vec![false; basis.len()]; alg.dim()];
    for e in &doc.action {
        let a = alg.basis().require(&e.algebra, "algebra")?;
        let m = basis.require(&e.module, "module")?;
        if std::mem::replace(&mut seen[a][m], true) {
            return Err(Error::Schema(format!("action ({}, {}) given twice", e.algebra, e.module)));
        }
        action[a][m] = comb_of(&e.result, &basis)?;
    }
    let differential = differential_of(&doc.differential, &basis)?;
    Ok(BimodulePresentation::from_parts(basis, action, differential))
}

/// Parse, reduce into `ring` and validate every axiom exhaustively.
pub fn load_and_validate_algebra(text: &str, ring: CoefficientRing) -> Result<AlgebraPresentation> {
    let a = algebra_from_document(text)?.reduced(ring)?;
    a.validate(ring)?;
    Ok(a)
}

pub fn load_and_validate_bimodule(
    text: &str,
    alg: &AlgebraPresentation,
    ring: CoefficientRing,
) -> Result<BimodulePresentation> {
    let m = bimodule_from_document(text, alg)?.reduced(ring)?;
    m.validate(alg, ring)?;
    Ok(m)
}

fn basis_docs(b: &GradedBasis) -> Vec<BasisDoc> {
    (0..b.len()).map(|i| BasisDoc { name: b.name(i).to_string(), degree: b.degree(i) }).collect()
}

fn differential_docs(d: &[Comb], b: &GradedBasis) -> Option<Vec<DiffDoc>> {
    let v: Vec<DiffDoc> = d
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(x, c)| DiffDoc { on: b.name(x).to_string(), result: terms_of(c, b) })
        .collect();
    (!v.is_empty()).then_some(v)
}

pub fn algebra_to_document(a: &AlgebraPresentation) -> String {
    let b = a.basis();
    let mut products = Vec::new();
    for x in 0..b.len() {
        for y in 0..b.len() {
            let c = a.product(x, y);
            if !c.is_zero() {
                products.push(ProductDoc {
                    left: b.name(x).to_string(),
                    right: b.name(y).to_string(),
                    result: terms_of(c, b),
                });
            }
        }
    }
    let d: Vec<Comb> = (0..b.len()).map(|x| a.differential(x).clone()).collect();
    let doc = AlgebraDoc { basis: basis_docs(b), products, differential: differential_docs(&d, b) };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

pub fn bimodule_to_document(m: &BimodulePresentation, alg: &AlgebraPresentation) -> String {
    let b = m.basis();
    let mut action = Vec::new();
    for x in 0..alg.dim() {
        for u in 0..b.len() {
            let c = m.left(x, u);
            if !c.is_zero() {
                action.push(ActionDoc {
                    algebra: alg.basis().name(x).to_string(),
                    module: b.name(u).to_string(),
                    result: terms_of(c, b),
                });
            }
        }
    }
    let d: Vec<Comb> = (0..b.len()).map(|u| m.differential(u).clone()).collect();
    let doc = BimoduleDoc { basis: basis_docs(b), action, differential: differential_docs(&d, b) };
    serde_json::to_string_pretty(&doc).expect("serializable")
}
