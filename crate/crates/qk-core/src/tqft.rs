//! The ℤ[[q]]-valued (1+1)-TQFT attached to QK(Gr(r,N)).
//!
//! A cobordism of genus g with input labels λ̱ and output labels ν̱ is
//! assigned the series N(g)_{λ̱}^{ν̱}. Genus 0 with any number of
//! boundaries is computed directly by localization. Higher genus is NEVER
//! computed by localization — no higher-genus engine exists here. Instead,
//! gluing IS the definition in code: the handle operator
//! H(x) = Σ_{α,β} F^{αβ} x • O_α • O_β is applied g times to the genus-0
//! core, boundaries are fused through the structure constants (pair of
//! pants), and outputs enter as κ(O*_ν) = Σ_β F^{νβ} O_β. The gluing
//! theorem is what makes this assignment agree with the geometric
//! definition; the tests exercise that agreement at genus 0 and the
//! internal consistency of every decomposition at higher genus.

use std::collections::HashMap;
use std::error::Error;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::grothendieck::{grothendieck_class, quantized_dual};
use crate::partition::{enumerate_box, BoxContext, Partition};
use crate::qkring::{
    invariant_series, inverse_pairing, kappa, pairing_matrix, quantum_product, structure_table,
    QKElement, StructureTable,
};
use crate::qseries::QSeries;
use crate::repring::RepRingElement;

/// A cobordism between labeled circles.
#[derive(Clone, Debug, PartialEq)]
pub struct CobordismSpec {
    pub ctx: BoxContext,
    pub genus: usize,
    pub inputs: Vec<Partition>,
    pub outputs: Vec<Partition>,
}

impl CobordismSpec {
    pub fn new(ctx: BoxContext, genus: usize, inputs: Vec<Partition>, outputs: Vec<Partition>) -> Self {
        for l in inputs.iter().chain(outputs.iter()) {
            assert!(ctx.contains(l), "label {} outside the {}x{} box", l, ctx.r, ctx.k);
        }
        CobordismSpec { ctx, genus, inputs, outputs }
    }

    /// Parses the compact text form, e.g. `g=1; in=[2,1],[1]; out=[]`.
    pub fn parse(text: &str, ctx: BoxContext) -> Result<Self, ParseError> {
        Parser { chars: text.chars().collect(), pos: 0, ctx }.spec()
    }
}

/// Parse failure with a 1-based column location.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl Error for ParseError {}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    ctx: BoxContext,
}

impl Parser {
    fn err<T>(&self, at: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { column: at + 1, message: message.into() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_spaces(&mut self) {
        while self.peek() == Some(' ') {
            self.pos += 1;
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        self.skip_spaces();
        for c in token.chars() {
            if self.peek() != Some(c) {
                return self.err(self.pos, format!("expected `{}`", token));
            }
            self.pos += 1;
        }
        Ok(())
    }

    fn number(&mut self) -> Result<u32, ParseError> {
        self.skip_spaces();
        let start = self.pos;
        while self.peek().map_or(false, |c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err(start, "expected a number");
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().or_else(|_| self.err(start, "number out of range"))
    }

    fn partition(&mut self) -> Result<Partition, ParseError> {
        self.skip_spaces();
        let open = self.pos;
        self.expect("[")?;
        let mut parts = Vec::new();
        self.skip_spaces();
        if self.peek() != Some(']') {
            loop {
                parts.push(self.number()?);
                self.skip_spaces();
                if self.peek() == Some(',') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect("]")?;
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return self.err(open, format!("parts not weakly decreasing: {:?}", parts));
        }
        let p = Partition::new(parts);
        if !self.ctx.contains(&p) {
            return self.err(open, format!("partition {} outside the {}x{} box", p, self.ctx.r, self.ctx.k));
        }
        Ok(p)
    }

    /// Comma-separated bracketed partitions; empty input means no labels.
    fn labels(&mut self) -> Result<Vec<Partition>, ParseError> {
        self.skip_spaces();
        let mut out = Vec::new();
        if self.peek() != Some('[') {
            return Ok(out);
        }
        loop {
            out.push(self.partition()?);
            self.skip_spaces();
            if self.peek() == Some(',') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn spec(&mut self) -> Result<CobordismSpec, ParseError> {
        self.expect("g")?;
        self.expect("=")?;
        let genus = self.number()? as usize;
        self.expect(";")?;
        self.expect("in")?;
        self.expect("=")?;
        let inputs = self.labels()?;
        self.expect(";")?;
        self.expect("out")?;
        self.expect("=")?;
        let outputs = self.labels()?;
        self.skip_spaces();
        if self.pos != self.chars.len() {
            return self.err(self.pos, "unexpected trailing input");
        }
        Ok(CobordismSpec {
            ctx: self.ctx,
            genus,
            inputs,
            outputs,
        })
    }
}

/// One gluing move applied to the running open surface.
#[derive(Clone, Debug, PartialEq)]
pub enum GluingStep {
    /// Attach a handle: x -> Σ_{α,β} F^{αβ} x • O_α • O_β.
    Handle,
    /// Fuse one more input boundary (a pair of pants against O_λ).
    FuseInput(Partition),
    /// Fuse one more output boundary, entering as κ(O*_ν) = Σ_β F^{νβ} O_β.
    FuseOutput(Partition),
}

/// A decomposition of a cobordism into genus-0 <= 3-boundary pieces and
/// handle operators, written as the left-comb sequence of contractions.
/// Every leaf is a pairing, structure constant, or cap from qkring.
#[derive(Clone, Debug, PartialEq)]
pub struct GluingPlan {
    pub steps: Vec<GluingStep>,
}

impl GluingPlan {
    /// Canonical plan: peel all handles first, then split boundaries
    /// left-to-right (inputs, then outputs).
    pub fn canonical(spec: &CobordismSpec) -> Self {
        let mut steps = vec![GluingStep::Handle; spec.genus];
        steps.extend(spec.inputs.iter().cloned().map(GluingStep::FuseInput));
        steps.extend(spec.outputs.iter().cloned().map(GluingStep::FuseOutput));
        GluingPlan { steps }
    }

    /// A family of admissible alternate plans (step reorderings) of the same
    /// cobordism, for consistency tests.
    pub fn alternates(spec: &CobordismSpec) -> Vec<Self> {
        let canonical = Self::canonical(spec).steps;
        let mut plans = Vec::new();
        // handles last instead of first
        let mut v = canonical.clone();
        v.rotate_left(spec.genus);
        plans.push(GluingPlan { steps: v });
        // boundaries reversed
        let mut v: Vec<GluingStep> = canonical.iter().rev().cloned().collect();
        v.rotate_right(spec.genus);
        plans.push(GluingPlan { steps: v });
        // handles interleaved between boundary fusions
        let mut v: Vec<GluingStep> =
            canonical[spec.genus..].iter().cloned().collect();
        for i in 0..spec.genus {
            v.insert((i + 1).min(v.len()), GluingStep::Handle);
        }
        plans.push(GluingPlan { steps: v });
        plans
    }
}

/// All tensors of the TQFT at a fixed (ctx, order, seed): pairing, inverse
/// pairing, structure constants, caps, and the precontracted handle element.
pub struct TqftData {
    pub ctx: BoxContext,
    pub order: usize,
    pub seed: u64,
    basis: Vec<Partition>,
    table: Arc<StructureTable>,
    pairing: Vec<Vec<QSeries>>,
    inverse: Vec<Vec<QSeries>>,
    caps: Vec<QSeries>,
    handle_elt: QKElement,
}

impl TqftData {
    pub fn new(ctx: BoxContext, order: usize, seed: u64) -> Self {
        let basis = enumerate_box(ctx);
        let table = structure_table(ctx, seed);
        let pairing = pairing_matrix(ctx, order, seed);
        let inverse = inverse_pairing(ctx, order, seed);
        let caps: Vec<QSeries> = basis
            .iter()
            .map(|l| invariant_series(ctx, &[grothendieck_class(l, ctx.r)], order, seed))
            .collect();
        let mut handle_elt = QKElement::zero(ctx, order);
        for (a, la) in basis.iter().enumerate() {
            for (b, lb) in basis.iter().enumerate() {
                if inverse[a][b].is_zero() {
                    continue;
                }
                let prod = quantum_product(
                    &table,
                    &QKElement::basis(ctx, la, order),
                    &QKElement::basis(ctx, lb, order),
                );
                handle_elt = handle_elt.add(&prod.scale(&inverse[a][b]));
            }
        }
        TqftData { ctx, order, seed, basis, table, pairing, inverse, caps, handle_elt }
    }

    pub fn basis(&self) -> &[Partition] {
        &self.basis
    }

    pub fn pairing(&self) -> &Vec<Vec<QSeries>> {
        &self.pairing
    }

    pub fn inverse_pairing(&self) -> &Vec<Vec<QSeries>> {
        &self.inverse
    }

    /// The handle operator H(x) = Σ_{α,β} F^{αβ} x • O_α • O_β.
    pub fn handle(&self, x: &QKElement) -> QKElement {
        quantum_product(&self.table, x, &self.handle_elt)
    }

    /// An output boundary labeled ν, rewritten as an input element.
    pub fn output_element(&self, nu: &Partition) -> QKElement {
        let a = self.basis.binary_search(nu).expect("label not in basis");
        let mut e = QKElement::zero(self.ctx, self.order);
        for (b, lb) in self.basis.iter().enumerate() {
            if !self.inverse[a][b].is_zero() {
                e = e.add(&QKElement::basis(self.ctx, lb, self.order).scale(&self.inverse[a][b]));
            }
        }
        e
    }

    /// Close the last boundary with a cap: Σ_ρ x_ρ <<O_ρ>>.
    pub fn cap(&self, x: &QKElement) -> QSeries {
        let mut acc = QSeries::zero(self.order);
        for (l, c) in x.coords() {
            let i = self.basis.binary_search(l).unwrap();
            acc = acc.add(&self.caps[i].mul(c));
        }
        acc
    }

    /// Evaluates a gluing plan: start from the unit disk, apply the steps,
    /// cap off the remaining boundary.
    pub fn evaluate(&self, plan: &GluingPlan) -> QSeries {
        let mut x = QKElement::unit(self.ctx, self.order);
        for step in &plan.steps {
            x = match step {
                GluingStep::Handle => self.handle(&x),
                GluingStep::FuseInput(l) => {
                    quantum_product(&self.table, &x, &QKElement::basis(self.ctx, l, self.order))
                }
                GluingStep::FuseOutput(l) => {
                    quantum_product(&self.table, &x, &self.output_element(l))
                }
            };
        }
        self.cap(&x)
    }
}

/// Cached TQFT data per (ctx, order, seed).
pub fn tqft_data(ctx: BoxContext, order: usize, seed: u64) -> Arc<TqftData> {
    static DATA: OnceLock<Mutex<HashMap<(usize, usize, usize, u64), Arc<TqftData>>>> =
        OnceLock::new();
    let cache = DATA.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (ctx.r, ctx.k, order, seed);
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let d = Arc::new(TqftData::new(ctx, order, seed));
    cache.lock().unwrap().entry(key).or_insert(d).clone()
}

/// N(0)_{λ̱}^{ν̱} by direct localization: insertions O_λ and O*_ν.
pub fn genus0_invariant(
    ctx: BoxContext,
    inputs: &[Partition],
    outputs: &[Partition],
    d_max: usize,
    seed: u64,
) -> QSeries {
    let insertions: Vec<RepRingElement> = inputs
        .iter()
        .map(|l| grothendieck_class(l, ctx.r))
        .chain(outputs.iter().map(|l| quantized_dual(l, ctx)))
        .collect();
    invariant_series(ctx, &insertions, d_max, seed)
}

/// N(g)_{λ̱}^{ν̱} via the canonical gluing plan.
pub fn invariant(spec: &CobordismSpec, d_max: usize, seed: u64) -> QSeries {
    let data = tqft_data(spec.ctx, d_max, seed);
    data.evaluate(&GluingPlan::canonical(spec))
}

/// One mismatched coefficient in a degeneration check.
#[derive(Debug, Clone)]
pub struct DegenerationFailure {
    pub q_power: usize,
    pub lhs: String,
    pub rhs: String,
}

/// Report of `degeneration_check`.
#[derive(Debug, Default)]
pub struct DegenerationReport {
    pub failures: Vec<DegenerationFailure>,
}

impl DegenerationReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the degeneration identity
/// <<V, W>>_g = Σ_{α,β} <<V, O_α>>_{g1} F^{αβ} <<O_β, W>>_{g2}
/// for arbitrary rank-r classes V, W (possibly outside the box).
///
/// At genus 0 the two-insertion sides are computed directly by localization;
/// at higher genus both sides go through gluing plans of different shapes
/// (one lump of g handles on the left, a g1/g2 split contraction on the
/// right).
pub fn degeneration_check(
    ctx: BoxContext,
    v: &RepRingElement,
    w: &RepRingElement,
    g1: usize,
    g2: usize,
    d_max: usize,
    seed: u64,
) -> DegenerationReport {
    let data = tqft_data(ctx, d_max, seed);
    let g = g1 + g2;
    let kv = kappa(v, ctx, d_max, seed);
    let kw = kappa(w, ctx, d_max, seed);
    let lhs = if g == 0 {
        invariant_series(ctx, &[v.clone(), w.clone()], d_max, seed)
    } else {
        let mut x = quantum_product(&data.table, &kv, &kw);
        for _ in 0..g {
            x = data.handle(&x);
        }
        data.cap(&x)
    };
    // half-invariants <<V, O_α>>_{g1}: localization at genus 0, gluing above
    let half = |kv: &QKElement, raw: &RepRingElement, gi: usize| -> Vec<QSeries> {
        data.basis
            .iter()
            .map(|a| {
                if gi == 0 {
                    invariant_series(
                        ctx,
                        &[raw.clone(), grothendieck_class(a, ctx.r)],
                        d_max,
                        seed,
                    )
                } else {
                    let mut x =
                        quantum_product(&data.table, kv, &QKElement::basis(ctx, a, d_max));
                    for _ in 0..gi {
                        x = data.handle(&x);
                    }
                    data.cap(&x)
                }
            })
            .collect()
    };
    let va = half(&kv, v, g1);
    let wb = half(&kw, w, g2);
    let mut rhs = QSeries::zero(d_max);
    for a in 0..data.basis.len() {
        for b in 0..data.basis.len() {
            rhs = rhs.add(&va[a].mul(&data.inverse[a][b]).mul(&wb[b]));
        }
    }
    let mut report = DegenerationReport::default();
    for d in 0..=d_max {
        if lhs.coeff(d) != rhs.coeff(d) {
            report.failures.push(DegenerationFailure {
                q_power: d,
                lhs: lhs.coeff(d).to_string(),
                rhs: rhs.coeff(d).to_string(),
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::complement;
    use crate::DEFAULT_SEED;
    use num_rational::BigRational;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn parse_round_trip() {
        let ctx = BoxContext::new(2, 4);
        let spec = CobordismSpec::parse("g=1; in=[2,1],[1]; out=[]", ctx).unwrap();
        assert_eq!(spec.genus, 1);
        assert_eq!(spec.inputs, vec![p(&[2, 1]), p(&[1])]);
        assert_eq!(spec.outputs, vec![Partition::empty()]);
        let closed = CobordismSpec::parse("g=2; in=; out=", ctx).unwrap();
        assert!(closed.inputs.is_empty() && closed.outputs.is_empty());
    }

    #[test]
    fn parse_errors_locate_column() {
        let ctx = BoxContext::new(2, 4);
        // [TRIVIAL] malformed header
        let e = CobordismSpec::parse("h=1; in=; out=", ctx).unwrap_err();
        assert_eq!(e.column, 1);
        // [TRIVIAL] increasing parts rejected at the opening bracket
        let e = CobordismSpec::parse("g=0; in=[1,2]; out=", ctx).unwrap_err();
        assert_eq!(e.column, 9);
        // [TRIVIAL] label outside the box
        let e = CobordismSpec::parse("g=0; in=; out=[3]", ctx).unwrap_err();
        assert_eq!(e.column, 15);
        // [TRIVIAL] trailing garbage
        let e = CobordismSpec::parse("g=0; in=; out= x", ctx).unwrap_err();
        assert_eq!(e.column, 16);
    }

    #[test]
    fn genus0_orthogonality_and_structure() {
        let ctx = BoxContext::new(2, 4);
        // [PAPER] N(0)_l^n = delta, both by localization and by gluing
        for l in [p(&[]), p(&[1]), p(&[2, 1])] {
            for nu in [p(&[1]), p(&[2, 1])] {
                let expect = if l == nu { QSeries::one(2) } else { QSeries::zero(2) };
                assert_eq!(genus0_invariant(ctx, &[l.clone()], &[nu.clone()], 2, DEFAULT_SEED), expect);
                let spec = CobordismSpec::new(ctx, 0, vec![l.clone()], vec![nu.clone()]);
                assert_eq!(invariant(&spec, 2, DEFAULT_SEED), expect);
            }
        }
        // [PAPER] N(0)_{l,m}^n equals the structure constant
        let t = structure_table(ctx, DEFAULT_SEED);
        let (l, m, nu) = (p(&[1]), p(&[2, 1]), p(&[1, 1]));
        assert_eq!(
            genus0_invariant(ctx, &[l.clone(), m.clone()], &[nu.clone()], 2, DEFAULT_SEED),
            t.entry_series(&l, &m, &nu, 2)
        );
        // [DERIVED] zero labels: <<1>> = 1/(1-q)
        assert_eq!(genus0_invariant(ctx, &[], &[], 3, DEFAULT_SEED), QSeries::one_over_one_minus_q(3));
    }

    #[test]
    fn gluing_matches_localization_on_three_boundaries() {
        // [DERIVED] the tensor algebra reproduces geometry at genus 0
        let ctx = BoxContext::new(2, 4);
        for (ins, outs) in [
            (vec![p(&[1]), p(&[2, 1])], vec![p(&[1, 1])]),
            (vec![p(&[2])], vec![p(&[1]), p(&[1, 1])]),
            (vec![p(&[1]), p(&[1]), p(&[1])], vec![]),
        ] {
            let spec = CobordismSpec::new(ctx, 0, ins.clone(), outs.clone());
            assert_eq!(
                invariant(&spec, 2, DEFAULT_SEED),
                genus0_invariant(ctx, &ins, &outs, 2, DEFAULT_SEED),
                "in={:?} out={:?}",
                ins,
                outs
            );
        }
    }

    #[test]
    fn closed_genus_one_is_basis_count() {
        // [DERIVED] trace of the identity: contraction of F with F^{-1}
        for (r, n, count) in [(1usize, 2usize, 2i64), (2, 4, 6)] {
            let ctx = BoxContext::new(r, n);
            let spec = CobordismSpec::new(ctx, 1, vec![], vec![]);
            assert_eq!(
                invariant(&spec, 2, DEFAULT_SEED),
                QSeries::constant(BigRational::from_integer(count.into()), 2)
            );
        }
    }

    #[test]
    fn all_plans_agree() {
        // [DERIVED] decomposition independence, g <= 2, <= 3 boundaries
        let ctx = BoxContext::new(2, 4);
        let specs = [
            CobordismSpec::new(ctx, 1, vec![p(&[1])], vec![p(&[1, 1])]),
            CobordismSpec::new(ctx, 2, vec![], vec![]),
            CobordismSpec::new(ctx, 2, vec![p(&[2, 1]), p(&[1])], vec![p(&[2])]),
        ];
        let data = tqft_data(ctx, 2, DEFAULT_SEED);
        for spec in &specs {
            let canonical = data.evaluate(&GluingPlan::canonical(spec));
            for plan in GluingPlan::alternates(spec) {
                assert_eq!(data.evaluate(&plan), canonical, "{:?}", plan);
            }
        }
    }

    #[test]
    fn raising_lowering_tube() {
        // [DERIVED] sum over a tube: sum_rho N(g)_{l,rho}^{n,rho} = N(g+1)_l^n
        let ctx = BoxContext::new(2, 4);
        let (l, nu) = (p(&[1]), p(&[2]));
        for g in 0..=1usize {
            let mut acc = QSeries::zero(2);
            for rho in enumerate_box(ctx) {
                let spec = CobordismSpec::new(ctx, g, vec![l.clone(), rho.clone()], vec![nu.clone(), rho]);
                acc = acc.add(&invariant(&spec, 2, DEFAULT_SEED));
            }
            let raised = CobordismSpec::new(ctx, g + 1, vec![l.clone()], vec![nu.clone()]);
            assert_eq!(acc, invariant(&raised, 2, DEFAULT_SEED), "g={}", g);
        }
    }

    #[test]
    fn boundary_permutation_invariance() {
        let ctx = BoxContext::new(2, 4);
        let a = CobordismSpec::new(ctx, 1, vec![p(&[1]), p(&[2, 1])], vec![p(&[2]), p(&[1, 1])]);
        let b = CobordismSpec::new(ctx, 1, vec![p(&[2, 1]), p(&[1])], vec![p(&[1, 1]), p(&[2])]);
        assert_eq!(invariant(&a, 2, DEFAULT_SEED), invariant(&b, 2, DEFAULT_SEED));
    }

    #[test]
    fn degeneration_identities() {
        let ctx = BoxContext::new(2, 4);
        // [DERIVED] V = W = O_l, g1 = g2 = 0
        let ol = grothendieck_class(&p(&[1, 1]), 2);
        assert!(degeneration_check(ctx, &ol, &ol, 0, 0, 2, DEFAULT_SEED).is_ok());
        // [DERIVED] V = det(S^dual) outside the box
        let det = RepRingElement::det_s_dual(2);
        let om = grothendieck_class(&p(&[2]), 2);
        assert!(degeneration_check(ctx, &det, &om, 0, 0, 2, DEFAULT_SEED).is_ok());
        // [DERIVED] higher genus, both sides through gluing
        assert!(degeneration_check(ctx, &ol, &om, 1, 0, 2, DEFAULT_SEED).is_ok());
        assert!(degeneration_check(ctx, &ol, &om, 1, 1, 2, DEFAULT_SEED).is_ok());
    }

    #[test]
    fn degeneration_two_dual_route() {
        // [DERIVED] <<1>>_1 = sum <<1, O_a, O_b>>_0 F^{ab}, the two routes
        // to genus 1 agree
        let ctx = BoxContext::new(2, 4);
        let data = tqft_data(ctx, 2, DEFAULT_SEED);
        let mut acc = QSeries::zero(2);
        let basis = enumerate_box(ctx);
        for (a, la) in basis.iter().enumerate() {
            for (b, lb) in basis.iter().enumerate() {
                let g0 = genus0_invariant(ctx, &[la.clone(), lb.clone()], &[], 2, DEFAULT_SEED);
                acc = acc.add(&g0.mul(&data.inverse_pairing()[a][b]));
            }
        }
        let closed = CobordismSpec::new(ctx, 1, vec![], vec![]);
        assert_eq!(acc, invariant(&closed, 2, DEFAULT_SEED));
    }

    #[test]
    fn caps_close_duals() {
        // [PAPER] <<O_{l*}>> = 1/(1-q): cap against the dual complement
        let ctx = BoxContext::new(2, 4);
        let l = p(&[2, 1]);
        let spec = CobordismSpec::new(ctx, 0, vec![complement(&l, ctx)], vec![]);
        assert_eq!(invariant(&spec, 3, DEFAULT_SEED), QSeries::one_over_one_minus_q(3));
    }
}
