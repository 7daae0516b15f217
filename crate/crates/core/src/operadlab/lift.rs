//! Truncated U_Com ⊗ (K ∘ R) for R = Com and R = E, the twisting cochain
//! β = θ + η_U ⊗ γ, and its lift α along the retract.

use super::be::{add_faces, compose_many, tuple_degree, tuple_to_string, BeTuple, Permutation};
use super::cells::en_membership;
use super::retract::{nu, IdentityCheck};
use crate::barcplx::{bar_terms, BarElement, LabelAlgebra};
use crate::coeff::{int, sign, Lin, Scalar};
use crate::error::{Error, Result};
use crate::treecomb::{enumerate_trees, LevelTree};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;

/// A finite set of inputs, as a bit mask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct InputSet(pub u32);

impl InputSet {
    pub fn singleton(i: usize) -> Self {
        InputSet(1 << i)
    }

    pub fn union(self, o: InputSet) -> Self {
        InputSet(self.0 | o.0)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn elements(self) -> Vec<usize> {
        (0..32).filter(|i| self.contains(*i)).collect()
    }

    pub fn from_elements(v: &[usize]) -> Self {
        InputSet(v.iter().fold(0, |a, i| a | 1 << i))
    }
}

impl fmt::Display for InputSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.elements().iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", s.join(","))
    }
}

/// Operations on the labels sitting at the leaves of a module term.
pub trait OperadLabel: Clone + Ord + Hash + fmt::Debug + Send + Sync {
    fn inputs(&self) -> InputSet;
    fn degree(&self) -> i64;
    fn show(&self) -> String;
}

impl OperadLabel for InputSet {
    fn inputs(&self) -> InputSet {
        *self
    }
    fn degree(&self) -> i64 {
        0
    }
    fn show(&self) -> String {
        self.to_string()
    }
}

impl OperadLabel for BeTuple {
    fn inputs(&self) -> InputSet {
        InputSet::from_elements(self[0].order())
    }
    fn degree(&self) -> i64 {
        tuple_degree(self)
    }
    fn show(&self) -> String {
        tuple_to_string(self)
    }
}

/// μ^U_f ⊗ t(ρ_1, …, ρ_i): the coefficient slot is recorded by its input
/// set f (U_Com is one-dimensional in each arity and sits in degree 0).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ModuleTerm<L> {
    pub unit: InputSet,
    pub tree: LevelTree,
    pub labels: Vec<L>,
}

impl<L: OperadLabel> ModuleTerm<L> {
    pub fn tree_degree(&self) -> i64 {
        self.tree.edge_count() as i64 - self.tree.levels() as i64
    }

    pub fn degree(&self) -> i64 {
        self.tree_degree() + self.labels.iter().map(OperadLabel::degree).sum::<i64>()
    }

    pub fn label_degree(&self) -> i64 {
        self.labels.iter().map(OperadLabel::degree).sum()
    }

    pub fn show(&self) -> String {
        let l: Vec<String> = self.labels.iter().map(OperadLabel::show).collect();
        format!("U{} ⊗ {}({})", self.unit, self.tree, l.join(","))
    }
}

/// A formal combination of module terms.
pub type TruncatedModuleElement<L> = Lin<ModuleTerm<L>>;

/// Values on tree generators (inputs 0..r in leaf order); absent trees map
/// to zero.
pub type GeneratorMap<L> = BTreeMap<LevelTree, TruncatedModuleElement<L>>;

/// Com labels: blocks of inputs, multiplied by union.
struct ComBlocks;

impl LabelAlgebra for ComBlocks {
    type Label = InputSet;
    fn degree(&self, _: &InputSet) -> i64 {
        0
    }
    fn multiply(&self, a: &InputSet, b: &InputSet) -> Vec<(InputSet, Scalar)> {
        vec![(a.union(*b), int(1))]
    }
    fn differentiate(&self, _: &InputSet) -> Vec<(InputSet, Scalar)> {
        Vec::new()
    }
}

fn singletons(r: usize) -> Vec<InputSet> {
    (0..r).map(InputSet::singleton).collect()
}

/// θ on a tree generator: each level-n fiber with two or more leaves sends
/// its least leaf x to the coefficient slot with sign (−1)^{s_x − 1} and its
/// greatest leaf y with sign (−1)^{s_y}.
pub fn theta_generator(t: &LevelTree) -> TruncatedModuleElement<InputSet> {
    let mut out = Lin::new();
    let s = t.dfs_edge_indices();
    let labels = singletons(t.leaves());
    for fiber in t.top_fibers() {
        if fiber.len() < 2 {
            continue;
        }
        for (leaf, odd) in [(fiber.start, s[fiber.start] % 2 == 0), (fiber.end - 1, s[fiber.end - 1] % 2 == 1)] {
            let mut l = labels.clone();
            l.remove(leaf);
            let tree = t.delete_leaf(leaf).expect("fiber has two leaves");
            out.add(ModuleTerm { unit: InputSet::singleton(leaf), tree, labels: l }, sign(odd));
        }
    }
    out
}

/// η_U ⊗ γ: the bar differential of the tree with Com-block labels.
pub fn gamma_generator(t: &LevelTree) -> TruncatedModuleElement<InputSet> {
    let x = BarElement { tree: t.clone(), labels: singletons(t.leaves()) };
    bar_terms(&ComBlocks, &x)
        .into_iter()
        .map(|(y, c)| (ModuleTerm { unit: InputSet::default(), tree: y.tree, labels: y.labels }, c))
        .collect()
}

/// β = θ + η_U ⊗ γ on all n-level trees with at most `leaves` leaves.
pub fn beta_generic(n: usize, leaves: usize) -> Result<GeneratorMap<InputSet>> {
    let mut out = BTreeMap::new();
    for r in 1..=leaves {
        for t in enumerate_trees(n, r)? {
            let mut v = theta_generator(&t);
            for (k, c) in gamma_generator(&t) {
                v.add(k, c);
            }
            out.insert(t, v);
        }
    }
    Ok(out)
}

/// ∂_β on a Com-labeled term: β of its tree, with labels substituted.
pub fn derivation_com(beta: &GeneratorMap<InputSet>, x: &ModuleTerm<InputSet>) -> TruncatedModuleElement<InputSet> {
    let mut out = Lin::new();
    let Some(img) = beta.get(&x.tree) else { return out };
    for (y, c) in img.iter() {
        let gather = |b: InputSet| b.elements().iter().fold(InputSet::default(), |a, j| a.union(x.labels[*j]));
        let t = ModuleTerm {
            unit: x.unit.union(gather(y.unit)),
            tree: y.tree.clone(),
            labels: y.labels.iter().map(|b| gather(*b)).collect(),
        };
        out.add(t, c.clone());
    }
    out
}

const SLOT_OFFSET: usize = 64;

/// ∂_α on an E-labeled term. Inputs moving into the coefficient slot go
/// through ψ; the others are composed into the blocks of α's output after a
/// Koszul regrouping.
pub fn derivation_e(alpha: &GeneratorMap<BeTuple>, x: &ModuleTerm<BeTuple>) -> TruncatedModuleElement<BeTuple> {
    let mut out = Lin::new();
    let Some(img) = alpha.get(&x.tree) else { return out };
    let deg: Vec<i64> = x.labels.iter().map(OperadLabel::degree).collect();
    'terms: for (y, c) in img.iter() {
        let mut unit = x.unit;
        for j in y.unit.elements() {
            if deg[j] != 0 {
                continue 'terms;
            }
            unit = unit.union(x.labels[j].inputs());
        }
        let blocks: Vec<Vec<usize>> = y.labels.iter().map(|l| l.inputs().elements()).collect();
        let mut block_of = vec![usize::MAX; x.labels.len()];
        for (k, b) in blocks.iter().enumerate() {
            for j in b {
                block_of[*j] = k;
            }
        }
        let ydeg: Vec<i64> = y.labels.iter().map(OperadLabel::degree).collect();
        let mut odd = 0i64;
        for j in 0..x.labels.len() {
            let bj = block_of[j];
            if bj == usize::MAX || deg[j] == 0 {
                continue;
            }
            odd += deg[j] * ydeg[bj + 1..].iter().sum::<i64>();
            for jp in 0..j {
                if block_of[jp] != usize::MAX && block_of[jp] > bj {
                    odd += deg[j] * deg[jp];
                }
            }
        }
        let mut partial: Vec<(Vec<BeTuple>, Scalar)> = vec![(Vec::new(), c * sign(odd % 2 != 0))];
        for (k, b) in blocks.iter().enumerate() {
            // move the slot names out of the way of the substituted inputs
            let outer: BeTuple = y.labels[k]
                .iter()
                .map(|p| Permutation::new(p.order().iter().map(|j| j + SLOT_OFFSET).collect()).expect("distinct"))
                .collect();
            let slots: Vec<usize> = b.iter().map(|j| j + SLOT_OFFSET).collect();
            let ys: Vec<&[Permutation]> = b.iter().map(|j| x.labels[*j].as_slice()).collect();
            let comp = compose_many(&outer, &slots, &ys);
            let mut next = Vec::new();
            for (pre, v) in &partial {
                for (t, w) in comp.iter() {
                    let mut p = pre.clone();
                    p.push(t.clone());
                    next.push((p, v * w));
                }
            }
            partial = next;
        }
        for (labels, v) in partial {
            out.add(ModuleTerm { unit, tree: y.tree.clone(), labels }, v);
        }
    }
    out
}

/// Internal differential: d_E on each label, with the Koszul sign of the
/// tree and the labels before it.
pub fn internal_d(x: &ModuleTerm<BeTuple>) -> TruncatedModuleElement<BeTuple> {
    let mut out = Lin::new();
    let mut pre = x.tree_degree();
    for (j, l) in x.labels.iter().enumerate() {
        let mut faces = Lin::new();
        add_faces(l, &sign(pre % 2 != 0), &mut faces);
        for (f, v) in faces {
            let mut labels = x.labels.clone();
            labels[j] = f;
            out.add(ModuleTerm { unit: x.unit, tree: x.tree.clone(), labels }, v);
        }
        pre += l.degree();
    }
    out
}

/// ν̃ = Σ_i (ιψ)^{⊗ i−1} ⊗ ν ⊗ id^{⊗ l−i}, with the Koszul sign of the tree.
pub fn nu_tilde(x: &ModuleTerm<BeTuple>) -> TruncatedModuleElement<BeTuple> {
    let mut out = Lin::new();
    let s = sign(x.tree_degree() % 2 != 0);
    let mut labels = x.labels.clone();
    for i in 0..x.labels.len() {
        let mut single = Lin::new();
        single.add(x.labels[i].clone(), int(1));
        for (t, v) in nu(&single) {
            let mut l = labels.clone();
            l[i] = t;
            out.add(ModuleTerm { unit: x.unit, tree: x.tree.clone(), labels: l }, v * &s);
        }
        if x.labels[i].degree() != 0 {
            break;
        }
        labels[i] = vec![Permutation::identity_on(x.labels[i][0].order())];
    }
    out
}

/// U ⊗ (K ∘ ψ).
pub fn psi_tilde(x: &ModuleTerm<BeTuple>) -> Option<ModuleTerm<InputSet>> {
    if x.label_degree() != 0 {
        return None;
    }
    Some(ModuleTerm { unit: x.unit, tree: x.tree.clone(), labels: x.labels.iter().map(OperadLabel::inputs).collect() })
}

/// U ⊗ (K ∘ ι).
pub fn iota_tilde(x: &ModuleTerm<InputSet>) -> ModuleTerm<BeTuple> {
    ModuleTerm {
        unit: x.unit,
        tree: x.tree.clone(),
        labels: x.labels.iter().map(|b| vec![Permutation::identity_on(&b.elements())]).collect(),
    }
}

fn apply<A: Ord + Clone, B: Ord>(f: impl Fn(&A) -> Lin<B>, x: &Lin<A>) -> Lin<B> {
    let mut out = Lin::new();
    for (k, c) in x.iter() {
        for (y, v) in f(k) {
            out.add(y, v * c);
        }
    }
    out
}

fn psi_lin(x: &TruncatedModuleElement<BeTuple>) -> TruncatedModuleElement<InputSet> {
    apply(|t| psi_tilde(t).into_iter().map(|y| (y, int(1))).collect(), x)
}

/// Truncation bounds: generator arity, label chain degree, tree leaves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftBounds {
    pub arity: usize,
    pub degree: usize,
    pub leaves: usize,
}

impl Default for LiftBounds {
    fn default() -> Self {
        LiftBounds { arity: 3, degree: 3, leaves: 3 }
    }
}

/// α = Σ_m α_m up to the chain-degree bound.
#[derive(Clone, Debug)]
pub struct Lift {
    pub bounds: LiftBounds,
    /// components[m] = α_m.
    pub components: Vec<GeneratorMap<BeTuple>>,
    /// Terms of α_{D+1}, which the truncation discards.
    pub dropped_terms: usize,
}

impl Lift {
    /// The recursion stops inside the truncation: α_{D+1} = 0.
    pub fn closed(&self) -> bool {
        self.dropped_terms == 0
    }
}

fn partial_sum(alpha: &[GeneratorMap<BeTuple>], m: usize, t: &LevelTree) -> TruncatedModuleElement<BeTuple> {
    let mut x = Lin::new();
    for a in 0..m {
        let b = m - 1 - a;
        if let Some(ab) = alpha[b].get(t) {
            let v = apply(|y| derivation_e(&alpha[a], y), ab);
            x.add_scaled(&v, &int(1));
        }
    }
    x
}

/// Lifts β along U ⊗ (K ∘ ψ): α_0 = ι̃β and α_m = ν̃ Σ_{a+b=m−1} ∂_{α_a} α_b.
///
/// Fails when β violates the hypothesis ∂_β β = 0 on a generator in range.
pub fn lift_twisting_cochain(beta: &GeneratorMap<InputSet>, bounds: LiftBounds) -> Result<Lift> {
    let max_r = bounds.arity.min(bounds.leaves);
    let gens: Vec<&LevelTree> = beta.keys().filter(|t| t.leaves() <= max_r).collect();
    for t in &gens {
        let bb = apply(|y| derivation_com(beta, y), &beta[*t]);
        if let Some((y, c)) = bb.iter().next() {
            return Err(Error::Invalid(format!(
                "hypothesis violated: ∂_β β({t}) has coefficient {c} on {}",
                y.show()
            )));
        };
    }
    let alpha0: GeneratorMap<BeTuple> = gens
        .iter()
        .map(|t| (LevelTree::clone(t), apply(|y| std::iter::once((iota_tilde(y), int(1))).collect(), &beta[*t])))
        .collect();
    let mut components = vec![alpha0];
    let mut dropped_terms = 0;
    for m in 1..=bounds.degree + 1 {
        let next: GeneratorMap<BeTuple> = gens
            .par_iter()
            .map(|t| {
                let x = partial_sum(&components, m, t);
                (LevelTree::clone(t), apply(nu_tilde, &x))
            })
            .filter(|(_, v)| !v.is_zero())
            .collect();
        if m == bounds.degree + 1 {
            dropped_terms = next.values().map(Lin::len).sum();
        } else {
            components.push(next);
        }
    }
    Ok(Lift { bounds, components, dropped_terms })
}

/// Identities verified on a lift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftReport {
    pub levels: usize,
    pub bounds: LiftBounds,
    pub generators: usize,
    /// Number of terms of α_m for each m within the truncation.
    pub component_terms: Vec<usize>,
    pub dropped_terms: usize,
    pub closed: bool,
    pub identities: Vec<IdentityCheck>,
    pub passed: bool,
}

/// Builds β for n-level trees, lifts it and checks: the hypothesis
/// ∂_β β = 0, the projection identity, the twisting identity degree by
/// degree, the commuting square ψ̃ ∘ (d + ∂_α) = ∂_β ∘ ψ̃ on the terms of α,
/// δν̃ = id − ι̃ψ̃ on the same terms, and E_n membership of every label.
pub fn lift_report(n: usize, bounds: LiftBounds) -> Result<LiftReport> {
    let beta = beta_generic(n, bounds.leaves.min(bounds.arity))?;
    let mut hyp = IdentityCheck::new("hypothesis: d_beta beta = 0");
    for (t, v) in &beta {
        let bb = apply(|y| derivation_com(&beta, y), v);
        hyp.record(bb.is_zero(), || t.to_string());
    }
    if !hyp.passed() {
        return Ok(LiftReport {
            levels: n,
            bounds,
            generators: beta.len(),
            component_terms: Vec::new(),
            dropped_terms: 0,
            closed: false,
            identities: vec![hyp],
            passed: false,
        });
    }
    let lift = lift_twisting_cochain(&beta, bounds)?;
    let alpha = &lift.components;
    let mut proj = IdentityCheck::new("projection: psi~ alpha_0 = beta, psi~ alpha_m = 0 (m >= 1)");
    let mut twist = IdentityCheck::new("twisting: d alpha_m = sum_{a+b=m-1} d_{alpha_a} alpha_b");
    let mut square = IdentityCheck::new("square: psi~ (d + d_alpha) = d_beta psi~");
    let mut homotopy = IdentityCheck::new("homotopy: d nu~ + nu~ d = id - iota~ psi~");
    let mut en = IdentityCheck::new("E_n membership of alpha labels");
    for (t, b) in &beta {
        for (m, am) in alpha.iter().enumerate() {
            let zero = Lin::new();
            let v = am.get(t).unwrap_or(&zero);
            let p = psi_lin(v);
            let ok = if m == 0 { &p == b } else { p.is_zero() };
            proj.record(ok, || format!("m={m}, tree {t}"));
            if m >= 1 {
                let lhs = apply(internal_d, v);
                let rhs = partial_sum(alpha, m, t);
                twist.record(lhs == rhs, || format!("m={m}, tree {t}"));
            }
            for (x, _) in v.iter() {
                let mut da = internal_d(x);
                for a in alpha {
                    da.add_scaled(&derivation_e(a, x), &int(1));
                }
                let lhs = psi_lin(&da);
                let rhs = match psi_tilde(x) {
                    Some(px) => derivation_com(&beta, &px),
                    None => Lin::new(),
                };
                square.record(lhs == rhs, || x.show());

                let mut h = apply(internal_d, &nu_tilde(x));
                h.add_scaled(&apply(nu_tilde, &internal_d(x)), &int(1));
                let mut want = Lin::new();
                want.add(x.clone(), int(1));
                if let Some(px) = psi_tilde(x) {
                    want.add(iota_tilde(&px), int(-1));
                }
                homotopy.record(h == want, || x.show());

                en.record(x.labels.iter().all(|l| en_membership(l, n)), || x.show());
            }
        }
    }
    let mut composite = IdentityCheck::new("(d - d_alpha)^2 = 0 on composite terms");
    for x in composite_terms(&alpha[0], bounds.arity) {
        composite.record(twisted_square_vanishes(alpha, &x), || x.show());
    }
    let identities = vec![hyp, proj, twist, square, homotopy, en, composite];
    let passed = identities.iter().all(IdentityCheck::passed);
    Ok(LiftReport {
        levels: n,
        bounds,
        generators: beta.len(),
        component_terms: alpha.iter().map(|a| a.values().map(Lin::len).sum()).collect(),
        dropped_terms: lift.dropped_terms,
        closed: lift.closed(),
        identities,
        passed,
    })
}

/// Terms t(ρ_1, …, ρ_i) over inputs 0..r (r ≤ max_arity) for every
/// generator t in the map, with labels of simplicial degree ≤ 1.
fn composite_terms(gens: &GeneratorMap<BeTuple>, max_arity: usize) -> Vec<ModuleTerm<BeTuple>> {
    let mut out = Vec::new();
    for t in gens.keys() {
        let i = t.leaves();
        for r in i..=max_arity {
            // assign each input to a block, all blocks nonempty
            let mut assign = vec![0usize; r];
            loop {
                let blocks: Vec<Vec<usize>> =
                    (0..i).map(|b| (0..r).filter(|e| assign[*e] == b).collect()).collect();
                if blocks.iter().all(|b| !b.is_empty()) {
                    let mut partial: Vec<Vec<BeTuple>> = vec![Vec::new()];
                    for b in &blocks {
                        let choices: Vec<BeTuple> =
                            (0..=1).flat_map(|l| super::be::nondegenerate_tuples(b, l)).collect();
                        partial = partial
                            .into_iter()
                            .flat_map(|p| {
                                choices.iter().map(move |c| {
                                    let mut q = p.clone();
                                    q.push(c.clone());
                                    q
                                })
                            })
                            .collect();
                    }
                    out.extend(partial.into_iter().map(|labels| ModuleTerm {
                        unit: InputSet::default(),
                        tree: t.clone(),
                        labels,
                    }));
                }
                let mut k = 0;
                while k < r && assign[k] + 1 == i {
                    assign[k] = 0;
                    k += 1;
                }
                if k == r {
                    break;
                }
                assign[k] += 1;
            }
        }
    }
    out
}

/// (d − ∂_α)² x = 0 in the label degrees the truncation determines.
fn twisted_square_vanishes(alpha: &[GeneratorMap<BeTuple>], x: &ModuleTerm<BeTuple>) -> bool {
    let big_d = |y: &ModuleTerm<BeTuple>| {
        let mut v = internal_d(y);
        for a in alpha {
            v.add_scaled(&derivation_e(a, y), &int(-1));
        }
        v
    };
    let mut x1 = Lin::new();
    x1.add(x.clone(), int(1));
    let twice = apply(big_d, &apply(big_d, &x1));
    let top = x.label_degree() + alpha.len() as i64 - 2;
    let ok = twice.iter().all(|(y, _)| y.label_degree() > top);
    ok
}
