use super::be::Permutation;
use crate::error::{Error, Result};
use crate::treecomb::{in_kn, CompleteGraph};

/// Number of changes in the relative order of e and f along the tuple.
pub fn variations_count(t: &[Permutation], e: usize, f: usize) -> Result<usize> {
    if e == f {
        return Err(Error::Invalid("variations need two distinct inputs".into()));
    }
    if t.iter().any(|w| w.position(e).is_none() || w.position(f).is_none()) {
        return Err(Error::Invalid(format!("inputs {e}, {f} are not both in the tuple")));
    }
    Ok(t.windows(2).filter(|w| w[0].before(e, f) != w[1].before(e, f)).count())
}

fn pairs(inputs: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    inputs.iter().enumerate().flat_map(move |(i, e)| inputs[i + 1..].iter().map(move |f| (*e, *f)))
}

/// Whether the tuple lies in the cell E_κ.
pub fn e_kappa_membership(t: &[Permutation], k: &CompleteGraph) -> Result<bool> {
    let Some(last) = t.last() else {
        return Err(Error::Invalid("empty tuple".into()));
    };
    if last.inputs() != k.vertices() {
        return Err(Error::Invalid("tuple inputs differ from the graph's vertices".into()));
    }
    for (e, f) in pairs(k.vertices()) {
        let v = variations_count(t, e, f)? as u32;
        let mu = k.weight(e, f);
        if !(v < mu || (v == mu && last.before(e, f) == k.before(e, f))) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether every pair of inputs varies at most n − 1 times.
pub fn en_membership(t: &[Permutation], n: usize) -> bool {
    let Some(last) = t.last() else { return false };
    let inputs = last.inputs();
    n >= 1 && pairs(&inputs).all(|(e, f)| variations_count(t, e, f).map_or(false, |v| v < n))
}

/// Every complete graph in K_n on the given vertices.
pub fn kn_graphs(vertices: &[usize], n: usize) -> Vec<CompleteGraph> {
    let ps: Vec<(usize, usize)> = pairs(vertices).collect();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    for order in Permutation::all(vertices) {
        let mut weights = vec![0u32; ps.len()];
        loop {
            let w = weights.clone();
            let g = CompleteGraph::from_order(order.order(), |a, b| {
                let i = ps.iter().position(|p| *p == (a.min(b), a.max(b))).unwrap();
                w[i]
            })
            .expect("distinct vertices");
            debug_assert!(in_kn(&g, n));
            out.push(g);
            // odometer over weights 0..n
            let mut i = 0;
            while i < weights.len() && weights[i] as usize == n - 1 {
                weights[i] = 0;
                i += 1;
            }
            if i == weights.len() {
                break;
            }
            weights[i] += 1;
        }
    }
    out
}

/// Membership in the colimit of E_κ over κ ∈ K_n, by search.
pub fn kn_colimit_membership(t: &[Permutation], n: usize) -> Result<bool> {
    let Some(last) = t.last() else {
        return Err(Error::Invalid("empty tuple".into()));
    };
    for g in kn_graphs(&last.inputs(), n) {
        if e_kappa_membership(t, &g)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operadlab::be::nondegenerate_tuples;

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn arity_two() {
        let t = vec![p(&[0, 1]), p(&[1, 0])];
        assert_eq!(variations_count(&t, 0, 1).unwrap(), 1);
        let swap1 = CompleteGraph::from_order(&[1, 0], |_, _| 1).unwrap();
        let id1 = CompleteGraph::from_order(&[0, 1], |_, _| 1).unwrap();
        assert!(e_kappa_membership(&t, &swap1).unwrap());
        assert!(!e_kappa_membership(&t, &id1).unwrap());
        for mu in 2..5 {
            for order in [[0, 1], [1, 0]] {
                let g = CompleteGraph::from_order(&order, |_, _| mu).unwrap();
                assert!(e_kappa_membership(&t, &g).unwrap());
            }
        }
        let c = vec![p(&[1, 0])];
        assert_eq!(variations_count(&c, 0, 1).unwrap(), 0);
        let g0 = CompleteGraph::from_order(&[1, 0], |_, _| 0).unwrap();
        assert!(e_kappa_membership(&c, &g0).unwrap());
    }

    #[test]
    fn en_agrees_with_colimit() {
        for r in 1..=3 {
            let inputs: Vec<usize> = (0..r).collect();
            for l in 0..=3 {
                for t in nondegenerate_tuples(&inputs, l) {
                    for n in 1..=l + 2 {
                        assert_eq!(en_membership(&t, n), kn_colimit_membership(&t, n).unwrap());
                    }
                }
            }
        }
    }
}
