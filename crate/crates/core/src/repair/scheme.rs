// SPDX-License-Identifier: Apache-2.0

//! Building a repair scheme for one failed position.
//!
//! For a failed position `i` with helper set `S`, pick a function `h` that
//! vanishes at `P_i` and a subspace polynomial `L_V`. The helper functions
//!
//! ```text
//! h_u = L_V(zeta_u h) / (c h) = zeta_u * prod_{0 != a in V} (zeta_u h - a) / c
//! ```
//!
//! take the value `zeta_u` at `P_i`, and at any other point their values span
//! a base-field space of dimension at most `t - l` whenever `h` does not vanish
//! there. Pairing `h_u f` with a dual vector `w` supported on `S + {i}` gives
//! `Tr(zeta_u f(P_i)) = -sum_j Tr((w_j / w_i) h_u(P_j) f(P_j))`, so node `j`
//! only has to send the traces for a base-field basis of `{h_u(P_j)}`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::codes::{dual_support_vector, unit_function_generic, CodeKind, EvalCode, VanishingLine};
use crate::error::{Error, Result};
use crate::galois::{Elem, FieldTower, LinearizedMap};
use crate::linalg::{self, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// `h = x - a_i` on a Reed-Solomon code.
    ReedSolomon,
    /// `h` is the tangent line at `P_i`, vanishing nowhere else.
    HermitianLine,
    /// `h` is any function in `L((g+1) P_inf - P_i)`; it may vanish at up to
    /// `g` helpers, which then send a full symbol.
    HermitianGenericWeak,
}

impl Variant {
    pub fn is_strong(self) -> bool {
        !matches!(self, Variant::HermitianGenericWeak)
    }

    /// The default variant for a code family.
    pub fn for_code(code: &EvalCode) -> Self {
        match code.kind() {
            CodeKind::ReedSolomon => Variant::ReedSolomon,
            CodeKind::Hermitian { .. } => Variant::HermitianLine,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DualSource {
    /// The all-ones vector, dual to every full-length Hermitian code of pole
    /// degree at most `n + 2g - 2`.
    AllOnes,
    /// A nullspace vector of the generator restricted to `S + {i}`.
    Nullspace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeOptions {
    /// Dimension of the subspace `V` over the base field.
    pub l: usize,
    pub variant: Variant,
    /// Basis of `V`; defaults to the first `l` dual basis elements.
    pub subspace: Option<Vec<Elem>>,
}

impl SchemeOptions {
    pub fn new(l: usize, variant: Variant) -> Self {
        SchemeOptions { l, variant, subspace: None }
    }
}

/// What one helper contributes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HelperPlan {
    pub node: usize,
    /// Dual vector entry `w_j`.
    pub weight: Elem,
    /// Base-field dimension of `{h_u(P_j) : u}`.
    pub rank: usize,
    /// Indices `u` whose values form a basis of that span; empty when the
    /// helper is pruned (`w_j = 0`).
    pub basis: Vec<usize>,
    /// `(w_j / w_i) h_v(P_j)` for `v` in `basis`; the helper sends
    /// `Tr(coefficient * symbol)` for each.
    pub coefficients: Vec<Elem>,
    /// `expansion[u][k]`: base-field coefficient of `h_{basis[k]}(P_j)` in
    /// `h_u(P_j)`.
    pub expansion: Vec<Vec<Elem>>,
}

impl HelperPlan {
    pub fn is_pruned(&self) -> bool {
        self.weight.is_zero()
    }

    /// Sub-symbols this helper sends.
    pub fn download(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Debug, Clone)]
pub struct RepairScheme {
    pub(crate) tower: Arc<FieldTower>,
    pub(crate) target: usize,
    pub(crate) variant: Variant,
    pub(crate) subspace: LinearizedMap,
    pub(crate) genus: usize,
    pub(crate) aug_pole_degree: usize,
    pub(crate) dual_source: DualSource,
    /// `table[u][k] = h_u(P_{helpers[k]})`.
    pub(crate) table: Vec<Vec<Elem>>,
    pub(crate) target_weight: Elem,
    pub(crate) plans: Vec<HelperPlan>,
    /// Helpers where `h` vanishes.
    pub(crate) vanishing_helpers: Vec<usize>,
}

impl RepairScheme {
    pub fn build(code: &EvalCode, target: usize, helpers: &[usize], opts: &SchemeOptions) -> Result<Self> {
        let n = code.len();
        let tower = code.tower().clone();
        let f = tower.field();
        if target >= n {
            return Err(Error::InvalidRepair(format!("target {target} out of range for length {n}")));
        }
        let mut helpers = helpers.to_vec();
        helpers.sort_unstable();
        helpers.dedup();
        if helpers.is_empty() {
            return Err(Error::InvalidRepair("empty helper set".into()));
        }
        if helpers.iter().any(|&j| j >= n || j == target) {
            return Err(Error::InvalidRepair("helpers must be other positions of the code".into()));
        }
        let d = helpers.len();

        let subspace = match &opts.subspace {
            Some(basis) if basis.len() != opts.l => {
                return Err(Error::InvalidParameter(format!(
                    "subspace basis has {} elements, expected l = {}",
                    basis.len(),
                    opts.l
                )))
            }
            Some(basis) => LinearizedMap::new(&tower, basis.clone())?,
            None => LinearizedMap::from_dual_prefix(&tower, opts.l)?,
        };
        let q_l = subspace.kernel().len();

        // h evaluated at every point, and the pole-order bound used for the
        // degree condition.
        let at = code.points()[target];
        let (h_values, h_degree): (Vec<Elem>, usize) = match (opts.variant, code.kind()) {
            (Variant::ReedSolomon, CodeKind::ReedSolomon) => {
                (code.points().iter().map(|p| f.sub(p.x, at.x)).collect(), 1)
            }
            (Variant::HermitianLine, CodeKind::Hermitian { r }) => {
                let line = VanishingLine::through(f, r, at);
                (code.points().iter().map(|&p| line.eval(f, p)).collect(), r as usize + 1)
            }
            (Variant::HermitianGenericWeak, CodeKind::Hermitian { .. }) => {
                let unit = unit_function_generic(code, target)?;
                (unit.values, code.genus() + 1)
            }
            (v, k) => {
                return Err(Error::InvalidRepair(format!("variant {v:?} does not apply to {k:?} codes")))
            }
        };
        let s = code.pole_degree();
        let aug = s + (q_l - 1) * h_degree;
        let dual_source = check_degree(code, opts.variant, d, aug, q_l)?;

        let w = match dual_source {
            DualSource::AllOnes => vec![Elem::ONE; n],
            DualSource::Nullspace => dual_support_vector(&code.with_pole_degree(aug), target, &helpers)?,
        };
        let target_weight = w[target];
        let c_inv = f.inv(subspace.constant())?;

        let helper_fn = |u: usize, h: Elem| -> Elem {
            let z = tower.primal()[u];
            f.mul(f.mul(z, subspace.eval_over_x(f, f.mul(z, h))), c_inv)
        };
        let t = tower.degree();
        debug_assert!((0..t).all(|u| helper_fn(u, Elem::ZERO) == tower.primal()[u]));
        let table: Vec<Vec<Elem>> = (0..t)
            .map(|u| helpers.iter().map(|&j| helper_fn(u, h_values[j])).collect())
            .collect();

        let w_i_inv = f.inv(target_weight)?;
        let plans = helpers
            .iter()
            .enumerate()
            .map(|(k, &j)| {
                let column: Vec<Elem> = (0..t).map(|u| table[u][k]).collect();
                plan_helper(&tower, j, &column, w[j], f.mul(w[j], w_i_inv))
            })
            .collect::<Result<Vec<_>>>()?;
        let vanishing_helpers = helpers.iter().copied().filter(|&j| h_values[j].is_zero()).collect();

        Ok(RepairScheme {
            tower,
            target,
            variant: opts.variant,
            subspace,
            genus: code.genus(),
            aug_pole_degree: aug,
            dual_source,
            table,
            target_weight,
            plans,
            vanishing_helpers,
        })
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn helpers(&self) -> Vec<usize> {
        self.plans.iter().map(|p| p.node).collect()
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn subspace(&self) -> &LinearizedMap {
        &self.subspace
    }

    pub fn l(&self) -> usize {
        self.subspace.dim()
    }

    pub fn dual_source(&self) -> DualSource {
        self.dual_source
    }

    /// Pole degree of the code that contains every `h_u f`.
    pub fn aug_pole_degree(&self) -> usize {
        self.aug_pole_degree
    }

    pub fn plans(&self) -> &[HelperPlan] {
        &self.plans
    }

    pub fn plan(&self, node: usize) -> Option<&HelperPlan> {
        self.plans
            .binary_search_by_key(&node, |p| p.node)
            .ok()
            .map(|k| &self.plans[k])
    }

    /// `h_u(P_j)` for every `u` and helper `j` (helpers in ascending order).
    pub fn table(&self) -> &[Vec<Elem>] {
        &self.table
    }

    pub fn target_weight(&self) -> Elem {
        self.target_weight
    }

    /// Helpers where the chosen `h` vanishes (always empty for strong variants).
    pub fn vanishing_helpers(&self) -> &[usize] {
        &self.vanishing_helpers
    }

    /// Same scheme with the dual vector multiplied by `scale`.
    pub fn rescaled(&self, scale: Elem) -> Result<Self> {
        let f = self.tower.field();
        f.inv(scale)?;
        let mut out = self.clone();
        out.target_weight = f.mul(out.target_weight, scale);
        let w_i_inv = f.inv(out.target_weight)?;
        for (k, plan) in out.plans.iter_mut().enumerate() {
            plan.weight = f.mul(plan.weight, scale);
            let ratio = f.mul(plan.weight, w_i_inv);
            plan.coefficients = plan.basis.iter().map(|&v| f.mul(ratio, self.table[v][k])).collect();
        }
        Ok(out)
    }

    /// The bandwidth guaranteed for the variant, in sub-symbols:
    /// `d (t - l)` for strong variants, `d (t - l) + g l` for the weak one.
    pub fn bound_symbols(&self) -> usize {
        let d = self.plans.len();
        let t = self.tower.degree();
        let l = self.l();
        let strong = d * (t - l);
        if self.variant.is_strong() {
            strong
        } else {
            strong + self.genus.min(d) * l
        }
    }
}

fn check_degree(code: &EvalCode, variant: Variant, d: usize, aug: usize, q_l: usize) -> Result<DualSource> {
    let n = code.len();
    let s = code.pole_degree();
    let g = code.genus();
    match (variant, code.kind()) {
        (Variant::ReedSolomon, _) => {
            if aug < d {
                Ok(DualSource::Nullspace)
            } else {
                Err(Error::Precondition {
                    bound: "k <= d - p^l + 1",
                    detail: format!("k = {} but d - p^l + 1 = {}", s + 1, d as i64 - q_l as i64 + 1),
                })
            }
        }
        (_, CodeKind::Hermitian { r }) => {
            let full = n == (r as usize).pow(3) && d == n - 1;
            if full && aug <= n + 2 * g - 2 {
                Ok(DualSource::AllOnes)
            } else if aug < d {
                Ok(DualSource::Nullspace)
            } else {
                let (bound, pole) = match variant {
                    Variant::HermitianGenericWeak => ("s + 1 <= d - (p^l - 1)(g + 1)", g + 1),
                    _ => ("s + 1 <= d - (p^l - 1)(r + 1)", r as usize + 1),
                };
                let mut detail = format!(
                    "s + (p^l - 1) * {pole} = {aug} must be below d = {d}"
                );
                if full {
                    detail.push_str(&format!(" or at most n + 2g - 2 = {}", n + 2 * g - 2));
                }
                Err(Error::Precondition { bound, detail })
            }
        }
        (v, k) => Err(Error::InvalidRepair(format!("variant {v:?} does not apply to {k:?} codes"))),
    }
}

/// Greedy leftmost-independent basis of a helper's column, plus the
/// expansion of every entry over it.
fn plan_helper(tower: &FieldTower, node: usize, column: &[Elem], weight: Elem, ratio: Elem) -> Result<HelperPlan> {
    let f = tower.field();
    let mut basis: Vec<usize> = Vec::new();
    let mut rank = 0;
    for u in 0..column.len() {
        let mut trial: Vec<Elem> = basis.iter().map(|&v| column[v]).collect();
        trial.push(column[u]);
        let r = linalg::rank_over_base(tower, &trial);
        if r > rank {
            rank = r;
            basis.push(u);
        }
    }
    // coordinate matrix: rows = base-field coordinates, columns = basis values
    if basis.is_empty() {
        return Ok(HelperPlan {
            node,
            weight,
            rank,
            basis,
            coefficients: Vec::new(),
            expansion: vec![Vec::new(); column.len()],
        });
    }
    let coords: Vec<Vec<Elem>> = basis.iter().map(|&v| tower.coordinates(column[v])).collect();
    let system = Matrix::from_rows(coords)?.transpose();
    let expansion = column
        .iter()
        .map(|&value| {
            linalg::solve(f, &system, &tower.coordinates(value))?
                .ok_or_else(|| Error::InvalidRepair("helper value outside its own span".into()))
        })
        .collect::<Result<Vec<_>>>()?;

    if weight.is_zero() {
        return Ok(HelperPlan {
            node,
            weight,
            rank,
            basis: Vec::new(),
            coefficients: Vec::new(),
            expansion: vec![Vec::new(); column.len()],
        });
    }
    let coefficients = basis.iter().map(|&v| f.mul(ratio, column[v])).collect();
    Ok(HelperPlan { node, weight, rank, basis, coefficients, expansion })
}
