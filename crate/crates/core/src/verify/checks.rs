//! One evaluator per statement, plus instance generation for a corpus entry.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::report::{CheckRecord, Relation, NOTE_DISCREPANCY};
use super::{Config, CorpusEntry, TensorCache, TheoremId};
use crate::degrees::{
    comm_degree, rel_comm_degree, rel_n_tensor_degree, rel_n_tensor_degree_naive, tensor_degree,
};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::rational::ExactRational;
use crate::spec::parse_words;
use crate::tensor::TensorSquare;

/// Everything about one corpus group that the evaluators share.
pub struct GroupContext<'a> {
    pub spec: String,
    pub group: &'a FiniteGroup,
    pub tensor: Arc<TensorSquare>,
    cache: &'a TensorCache,
    center: Subgroup,
    tensor_center: Subgroup,
    tensor_series: Vec<Subgroup>,
    tensor_class: Option<usize>,
    nilpotency_class: Option<usize>,
    comm_degree: ExactRational,
    tensor_degree: ExactRational,
}

impl<'a> GroupContext<'a> {
    pub fn new(
        spec: &str,
        group: &'a FiniteGroup,
        tensor: Arc<TensorSquare>,
        cache: &'a TensorCache,
    ) -> Result<Self> {
        let tensor_center = tensor.tensor_center(group)?;
        let tensor_series = tensor.tensor_upper_central_series(group)?;
        let tensor_class = tensor.tensor_class(group)?;
        let tensor_degree = tensor_degree(group, &tensor)?;
        Ok(GroupContext {
            spec: spec.to_string(),
            group,
            cache,
            center: group.center(),
            tensor_center,
            tensor_series,
            tensor_class,
            nilpotency_class: group.nilpotency_class(),
            comm_degree: comm_degree(group),
            tensor_degree,
            tensor,
        })
    }

    /// `Zₙ⊗(G)`, with `Z₀⊗ = 1`.
    pub fn tensor_upper_central(&self, n: usize) -> Subgroup {
        match n {
            0 => self.group.trivial_subgroup(),
            n => self.tensor_series[(n - 1).min(self.tensor_series.len() - 1)].clone(),
        }
    }

    fn degree(&self, h: &Subgroup, n: usize) -> Result<ExactRational> {
        rel_n_tensor_degree(self.group, &self.tensor, h, n)
    }

    fn square_of(&self, k: &FiniteGroup) -> Result<Arc<TensorSquare>> {
        self.cache.get(k)
    }

    /// `H / (H ∩ Z⊗(G))` as a group of its own.
    fn reduced_subgroup(&self, h: &Subgroup) -> Result<FiniteGroup> {
        let hg = self.group.subgroup_as_group(h)?;
        let core = h.intersection(&self.tensor_center).relative_to(h)?;
        Ok(hg.quotient(&core)?.0)
    }
}

/// Parameters of one statement instance.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Instance {
    pub subgroup: Option<Subgroup>,
    pub normal: Option<Subgroup>,
    pub n: Option<usize>,
}

impl Instance {
    fn h(h: &Subgroup) -> Self {
        Instance {
            subgroup: Some(h.clone()),
            ..Default::default()
        }
    }

    fn n(n: usize) -> Self {
        Instance {
            n: Some(n),
            ..Default::default()
        }
    }

    fn hn(h: &Subgroup, n: usize) -> Self {
        Instance {
            subgroup: Some(h.clone()),
            n: Some(n),
            ..Default::default()
        }
    }

    fn subgroup(&self) -> Result<&Subgroup> {
        self.subgroup
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("instance needs a subgroup".into()))
    }

    fn normal(&self) -> Result<&Subgroup> {
        self.normal
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("instance needs a normal subgroup".into()))
    }

    fn depth(&self) -> Result<usize> {
        match self.n {
            Some(n) if n >= 1 => Ok(n),
            _ => Err(Error::InvalidArgument("instance needs n ≥ 1".into())),
        }
    }
}

/// Result of evaluating one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Checked(Vec<CheckRecord>),
    /// The statement's hypotheses fail for this instance.
    NotApplicable(String),
}

/// Collects witness fields; attached to a record only when it fails or is
/// flagged.
#[derive(Default)]
struct Witness(BTreeMap<String, String>);

impl Witness {
    fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.0.insert(key.to_string(), value.to_string());
        self
    }
}

fn elements(s: &Subgroup) -> String {
    let inner: Vec<String> = s.elements().iter().map(ToString::to_string).collect();
    format!("[{}]", inner.join(" "))
}

fn class(c: Option<usize>) -> String {
    c.map(|c| c.to_string()).unwrap_or_else(|| "none".into())
}

/// Builds a comparison record for `inst`, attaching `witness` on failure.
#[allow(clippy::too_many_arguments)]
fn record(
    id: TheoremId,
    ctx: &GroupContext<'_>,
    inst: &Instance,
    relation: Relation,
    lhs: ExactRational,
    rhs: ExactRational,
    note: Option<&str>,
    witness: Witness,
) -> CheckRecord {
    let mut r = CheckRecord::compare(id.as_str(), &ctx.spec, relation, lhs, rhs);
    r.subgroup = inst.subgroup.as_ref().map(|s| s.elements().to_vec());
    r.normal = inst.normal.as_ref().map(|s| s.elements().to_vec());
    r.n = inst.n;
    r.note = note.map(str::to_string);
    if !r.holds {
        let (l, rr) = (
            r.lhs.clone().expect("compared"),
            r.rhs.clone().expect("compared"),
        );
        let mut w = witness.with("lhs_minus_rhs", &l - &rr);
        if let Some(h) = &inst.subgroup {
            w = w.with("subgroup_order", h.order());
        }
        r.witness = Some(w.0);
    }
    r
}

fn one(r: CheckRecord) -> Result<Outcome> {
    Ok(Outcome::Checked(vec![r]))
}

fn not_applicable(why: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome::NotApplicable(why.into()))
}

fn half() -> ExactRational {
    ExactRational::new(1, 2)
}

/// Evaluates `id` on `inst`. Hypothesis failures give
/// [`Outcome::NotApplicable`]; limit errors propagate so the caller can
/// record a skip.
pub fn check_theorem(id: TheoremId, ctx: &GroupContext<'_>, inst: &Instance) -> Result<Outcome> {
    let g = ctx.group;
    let order = g.order();
    match id {
        TheoremId::Thm1_1 => {
            let (h, n) = (inst.subgroup()?, inst.normal()?);
            if !g.is_normal(n) || !n.is_subset_of(h) {
                return not_applicable("needs N normal in G and N ⊆ H");
            }
            let lhs = rel_comm_degree(g, h);
            let (q, proj) = g.quotient(n)?;
            let quotient_degree = rel_comm_degree(&q, &h.image(&proj));
            let n_degree = comm_degree(&g.subgroup_as_group(n)?);
            let rhs = &quotient_degree * &n_degree;
            let meet = n.intersection(&g.commutator_subgroup(h, &g.whole()));
            let witness = || {
                Witness::default()
                    .with("d(H/N,G/N)", &quotient_degree)
                    .with("d(N)", &n_degree)
                    .with("N∩[H,G]", elements(&meet))
            };
            let mut out = vec![record(
                id,
                ctx,
                inst,
                Relation::AtMost,
                lhs.clone(),
                rhs.clone(),
                None,
                witness(),
            )];
            if meet.order() == 1 {
                out.push(record(
                    id,
                    ctx,
                    inst,
                    Relation::Equal,
                    lhs,
                    rhs,
                    Some("equality-case"),
                    witness(),
                ));
            }
            Ok(Outcome::Checked(out))
        }
        TheoremId::Thm1_2 => {
            let Some(p) = g.smallest_prime_divisor() else {
                return not_applicable("trivial group has no prime divisor");
            };
            let j2 = ctx.tensor.j2_order(g)?;
            let (z, zt) = (ctx.center.order(), ctx.tensor_center.order());
            let j2r = ExactRational::from_integer(j2);
            let lower = &ctx.comm_degree / &j2r
                + ExactRational::new(zt, order)
                    * (ExactRational::one() - ExactRational::new(1, j2));
            let upper = &ctx.comm_degree - &ExactRational::new((p - 1) * (z - zt), p * order);
            let witness = || {
                Witness::default()
                    .with("p", p)
                    .with("|J2|", j2)
                    .with("|Z|", z)
                    .with("|Ztensor|", zt)
                    .with("d(G)", &ctx.comm_degree)
            };
            Ok(Outcome::Checked(vec![
                record(
                    id,
                    ctx,
                    inst,
                    Relation::AtMost,
                    lower,
                    ctx.tensor_degree.clone(),
                    Some("lower-bound"),
                    witness(),
                ),
                record(
                    id,
                    ctx,
                    inst,
                    Relation::AtMost,
                    ctx.tensor_degree.clone(),
                    upper,
                    Some("upper-bound"),
                    witness(),
                ),
            ]))
        }
        TheoremId::Thm1_3 => {
            if ctx.tensor_center.order() != 1 || g.is_abelian() {
                return not_applicable("needs Z⊗(G) = 1 and G nonabelian");
            }
            let p = g.smallest_prime_divisor().expect("nontrivial");
            let w = Witness::default().with("p", p);
            one(record(
                id,
                ctx,
                inst,
                Relation::AtMost,
                ctx.tensor_degree.clone(),
                ExactRational::new(1, p),
                None,
                w,
            ))
        }
        TheoremId::Lem2_1 => {
            let h = inst.subgroup()?;
            // ratio [H : C⊗(x) ∩ H] / [G : C⊗(x)] for every x
            let mut ratios = Vec::with_capacity(order);
            for x in g.elements() {
                let c = ctx.tensor.tensor_centralizer(g, x)?;
                let h_index = ExactRational::new(h.order(), h.intersection(&c).order());
                let g_index = ExactRational::new(order, c.order());
                ratios.push((h_index / g_index, x));
            }
            let (max, argmax) = ratios.iter().max().cloned().expect("nonempty");
            let (min, argmin) = ratios.iter().min().cloned().expect("nonempty");
            let mut out = vec![record(
                id,
                ctx,
                inst,
                Relation::AtMost,
                max,
                ExactRational::one(),
                Some("index-inequality"),
                Witness::default().with("x", argmax),
            )];
            if h.product_set(&ctx.tensor_center, g).len() == order {
                out.push(record(
                    id,
                    ctx,
                    inst,
                    Relation::Equal,
                    min,
                    ExactRational::one(),
                    Some("equality-case"),
                    Witness::default().with("x", argmin),
                ));
            }
            Ok(Outcome::Checked(out))
        }
        TheoremId::Thm2_2 => {
            let (h, n) = (inst.subgroup()?, inst.depth()?);
            let lhs = ctx.degree(h, n)?;
            let whole = ctx.degree(&g.whole(), n)?;
            let index = ExactRational::new(order, h.order()).pow(n as i32 + 1);
            let rhs = &index * &whole;
            let w = Witness::default()
                .with("d_n(G)", &whole)
                .with("index_power", &index);
            one(record(id, ctx, inst, Relation::AtMost, lhs, rhs, None, w))
        }
        TheoremId::Thm2_3 => {
            let (h, n) = (inst.subgroup()?, inst.depth()?);
            let lhs = ctx.degree(h, n + 1)?;
            let k = ctx.reduced_subgroup(h)?;
            let tk = ctx.square_of(&k)?;
            let dk = rel_n_tensor_degree(&k, &tk, &k.whole(), n)?;
            let rhs = half() * (ExactRational::one() + dk.clone());
            let w = Witness::default()
                .with("|H∩Ztensor|", h.intersection(&ctx.tensor_center).order())
                .with("quotient_order", k.order())
                .with("d_n(quotient)", &dk);
            one(record(id, ctx, inst, Relation::AtMost, lhs, rhs, None, w))
        }
        TheoremId::Thm2_5 => {
            let n = inst.depth()?;
            let lhs = ctx.degree(&g.whole(), n + 1)?;
            let zn = ctx.tensor_upper_central(n);
            let (q, _) = g.quotient(&zn)?;
            let tq = ctx.square_of(&q)?;
            let dq = tensor_degree(&q, &tq)?;
            let two_n = ExactRational::from_integer(1u64 << n);
            let rhs = (&two_n - &ExactRational::one() + dq.clone()) / two_n;
            let w = Witness::default()
                .with("Z_n_tensor", elements(&zn))
                .with("d_tensor(G/Z_n)", &dq);
            one(record(id, ctx, inst, Relation::AtMost, lhs, rhs, None, w))
        }
        TheoremId::Thm2_6 => {
            let n = inst.depth()?;
            if matches!(ctx.tensor_class, Some(c) if c <= n) {
                return not_applicable("G is tensor nilpotent of class at most n");
            }
            let lhs = ctx.degree(&g.whole(), n)?;
            let rhs = ExactRational::dyadic_gap(n as u32 + 2, 3);
            let w = Witness::default().with("tensor_class", class(ctx.tensor_class));
            one(record(id, ctx, inst, Relation::AtMost, lhs, rhs, None, w))
        }
        TheoremId::Lem2_7 => {
            let n = inst.depth()?;
            let Some(c) = ctx.tensor_class.filter(|&c| c <= n) else {
                return not_applicable("G is not tensor nilpotent of class at most n");
            };
            let w = Witness::default()
                .with("tensor_class", c)
                .with("nilpotency_class", class(ctx.nilpotency_class));
            // A non-nilpotent group is recorded with lhs n + 1 so that it fails.
            let lhs = ctx.nilpotency_class.unwrap_or(n + 1);
            one(record(
                id,
                ctx,
                inst,
                Relation::AtMost,
                ExactRational::from_integer(lhs),
                ExactRational::from_integer(n),
                None,
                w,
            ))
        }
        TheoremId::Thm2_8 => {
            let n = inst.depth()?;
            if order == 1 || ctx.center.order() != 1 {
                return not_applicable("needs G nontrivial with Z(G) = 1");
            }
            let lhs = ctx.degree(&g.whole(), n)?;
            let rhs = ExactRational::dyadic_gap(n as u32, 1);
            let note = (n == 1).then_some("base-case");
            one(record(
                id,
                ctx,
                inst,
                Relation::AtMost,
                lhs,
                rhs,
                note,
                Witness::default(),
            ))
        }
        TheoremId::ThreeCases => {
            let (h, n) = (inst.subgroup()?, inst.depth()?);
            if h.order() == order {
                return not_applicable("needs a proper subgroup");
            }
            let lhs = ctx.degree(h, n)?;
            let zn = ctx.tensor_upper_central(n);
            if h.is_subset_of(&zn) {
                let w = Witness::default().with("Z_n_tensor", elements(&zn));
                return one(record(
                    id,
                    ctx,
                    inst,
                    Relation::Equal,
                    lhs,
                    ExactRational::one(),
                    Some("case-i"),
                    w,
                ));
            }
            let k = ctx.reduced_subgroup(h)?;
            let tk = ctx.square_of(&k)?;
            let k_class = tk.tensor_class(&k)?;
            let w = Witness::default()
                .with("Z_n_tensor", elements(&zn))
                .with("quotient_order", k.order())
                .with("quotient_tensor_class", class(k_class));
            if matches!(k_class, Some(c) if c < n) {
                one(record(
                    id,
                    ctx,
                    inst,
                    Relation::Equal,
                    lhs,
                    ExactRational::one(),
                    Some("case-ii"),
                    w,
                ))
            } else {
                let rhs = ExactRational::dyadic_gap(n as u32 + 2, 3);
                one(record(
                    id,
                    ctx,
                    inst,
                    Relation::AtMost,
                    lhs,
                    rhs,
                    Some("case-iii"),
                    w,
                ))
            }
        }
        TheoremId::Quotient => {
            let (h, nsub, n) = (inst.subgroup()?, inst.normal()?, inst.depth()?);
            if !g.is_normal(nsub) || !nsub.is_subset_of(h) {
                return not_applicable("needs N normal in G and N ⊆ H");
            }
            let lhs = ctx.degree(h, n)?;
            let (q, proj) = g.quotient(nsub)?;
            let tq = ctx.square_of(&q)?;
            let rhs = rel_n_tensor_degree(&q, &tq, &h.image(&proj), n)?;
            let note = (h.order() == order).then_some("corollary");
            let w = Witness::default().with("quotient_order", q.order());
            one(record(id, ctx, inst, Relation::AtMost, lhs, rhs, note, w))
        }
        TheoremId::SanityErl => {
            let n = inst.depth()?;
            let below = ctx.tensor_upper_central(n - 1);
            let (q, _) = g.quotient(&below)?;
            if q.is_abelian() {
                return not_applicable("G/Z_{n-1}⊗(G) is abelian");
            }
            let w = Witness::default().with("quotient_order", q.order());
            one(record(
                id,
                ctx,
                inst,
                Relation::AtMost,
                comm_degree(&q),
                ExactRational::new(5, 8),
                None,
                w,
            ))
        }
        TheoremId::SanityLescot => {
            if ctx.nilpotency_class.is_some() {
                return not_applicable("G is nilpotent");
            }
            one(record(
                id,
                ctx,
                inst,
                Relation::AtMost,
                ctx.comm_degree.clone(),
                half(),
                None,
                Witness::default(),
            ))
        }
        TheoremId::Ex3_1 => {
            let n = inst.depth()?;
            if ctx.spec != "S3" {
                return not_applicable("example concerns S3");
            }
            let lhs = ctx.degree(&g.whole(), n)?;
            one(record(
                id,
                ctx,
                inst,
                Relation::AtMost,
                lhs,
                ExactRational::dyadic_gap(n as u32, 1),
                None,
                Witness::default(),
            ))
        }
        TheoremId::Ex3_2 => {
            let (h, n) = (inst.subgroup()?, inst.depth()?);
            if ctx.spec != "C4" || h.order() != 2 || n != 2 {
                return not_applicable("example concerns the order-2 subgroup of C4 at n = 2");
            }
            let lhs = ctx.degree(h, n)?;
            one(record(
                id,
                ctx,
                inst,
                Relation::Equal,
                lhs,
                ExactRational::one(),
                None,
                Witness::default(),
            ))
        }
        TheoremId::Ex3_3 => {
            let (h, n) = (inst.subgroup()?, inst.depth()?);
            if ctx.spec != "D8" || *h != example_subgroup(g, "a^2,a*b")? || n != 4 {
                return not_applicable("example concerns <a^2, ab> in D8 at n = 4");
            }
            let lhs = ctx.degree(h, n)?;
            let oracle = rel_n_tensor_degree_naive(g, &ctx.tensor, h, n)?;
            if oracle != lhs {
                return Err(Error::Internal(format!(
                    "d_4 tensor degree of <a^2, ab> in D8: counting recurrence gives {lhs}, tuple enumeration gives {oracle}"
                )));
            }
            let printed = ExactRational::new(192, 2048);
            let mut r = record(
                id,
                ctx,
                inst,
                Relation::Equal,
                lhs,
                printed,
                None,
                Witness::default(),
            );
            if !r.holds {
                r.note = Some(NOTE_DISCREPANCY.into());
                let w = r.witness.get_or_insert_with(BTreeMap::new);
                w.insert("printed_value".into(), "192/2048 (0/093)".into());
                w.insert(
                    "subgroup_abelian".into(),
                    g.subgroup_as_group(h)?.is_abelian().to_string(),
                );
                w.insert("tuple_count_oracle".into(), oracle.to_string());
            }
            one(r)
        }
    }
}

fn example_subgroup(g: &FiniteGroup, words: &str) -> Result<Subgroup> {
    let gens = parse_words(words)?
        .iter()
        .map(|w| g.eval_word(w))
        .collect::<Result<Vec<_>>>()?;
    Ok(g.subgroup_generated(&gens))
}

fn needs_subgroups(id: TheoremId) -> bool {
    matches!(
        id,
        TheoremId::Thm1_1
            | TheoremId::Lem2_1
            | TheoremId::Thm2_2
            | TheoremId::Thm2_3
            | TheoremId::ThreeCases
            | TheoremId::Quotient
    )
}

/// Candidate instances of `id` for a corpus group; hypotheses are filtered
/// later by [`check_theorem`].
fn instances(
    id: TheoremId,
    ctx: &GroupContext<'_>,
    subgroups: &[Subgroup],
    normals: &[Subgroup],
    config: &Config,
) -> Result<Vec<Instance>> {
    let ns = || config.n_range.clone();
    let g = ctx.group;
    let with_normals = |h: &Subgroup| -> Vec<Subgroup> {
        normals
            .iter()
            .filter(|n| n.is_subset_of(h))
            .cloned()
            .collect()
    };
    Ok(match id {
        TheoremId::Thm1_2 | TheoremId::Thm1_3 | TheoremId::SanityLescot => {
            vec![Instance::default()]
        }
        TheoremId::Lem2_1 => subgroups.iter().map(Instance::h).collect(),
        TheoremId::Thm1_1 => subgroups
            .iter()
            .flat_map(|h| {
                with_normals(h).into_iter().map(move |n| Instance {
                    subgroup: Some(h.clone()),
                    normal: Some(n),
                    n: None,
                })
            })
            .collect(),
        TheoremId::Thm2_2 | TheoremId::Thm2_3 | TheoremId::ThreeCases => subgroups
            .iter()
            .flat_map(|h| ns().map(move |n| Instance::hn(h, n)))
            .collect(),
        TheoremId::Quotient => subgroups
            .iter()
            .flat_map(|h| {
                with_normals(h).into_iter().flat_map(move |nsub| {
                    ns().map(move |n| Instance {
                        subgroup: Some(h.clone()),
                        normal: Some(nsub.clone()),
                        n: Some(n),
                    })
                })
            })
            .collect(),
        TheoremId::Thm2_5
        | TheoremId::Thm2_6
        | TheoremId::Lem2_7
        | TheoremId::Thm2_8
        | TheoremId::SanityErl => ns().map(Instance::n).collect(),
        TheoremId::Ex3_1 if ctx.spec == "S3" => (1..=4).map(Instance::n).collect(),
        TheoremId::Ex3_2 if ctx.spec == "C4" => vec![Instance::hn(&example_subgroup(g, "a^2")?, 2)],
        TheoremId::Ex3_3 if ctx.spec == "D8" => {
            vec![Instance::hn(&example_subgroup(g, "a^2,a*b")?, 4)]
        }
        TheoremId::Ex3_1 | TheoremId::Ex3_2 | TheoremId::Ex3_3 => Vec::new(),
    })
}

fn applies_to(id: TheoremId, spec: &str) -> bool {
    match id {
        TheoremId::Ex3_1 => spec == "S3",
        TheoremId::Ex3_2 => spec == "C4",
        TheoremId::Ex3_3 => spec == "D8",
        _ => true,
    }
}

/// All records for one corpus entry.
pub(super) fn evaluate_entry(
    entry: &CorpusEntry,
    theorems: &[TheoremId],
    config: &Config,
    cache: &TensorCache,
) -> Result<Vec<CheckRecord>> {
    let spec = entry.spec.render();
    let tensor = match &entry.tensor {
        Ok(t) => t.clone(),
        Err(reason) => {
            return Ok(theorems
                .iter()
                .filter(|id| applies_to(**id, &spec))
                .map(|id| CheckRecord::skipped(id.as_str(), &spec, reason.clone()))
                .collect());
        }
    };
    let ctx = GroupContext::new(&spec, &entry.group, tensor, cache)?;
    let subgroups = match entry.group.all_subgroups(config.subgroup_bound) {
        Ok(s) => Some(s),
        Err(Error::Limit(_)) => None,
        Err(e) => return Err(e),
    };
    let normals: Vec<Subgroup> = subgroups
        .iter()
        .flatten()
        .filter(|s| entry.group.is_normal(s))
        .cloned()
        .collect();
    let mut out = Vec::new();
    for &id in theorems {
        let Some(subs) = subgroups
            .as_deref()
            .or((!needs_subgroups(id)).then_some(&[][..]))
        else {
            out.push(CheckRecord::skipped(
                id.as_str(),
                &spec,
                format!(
                    "subgroup enumeration bound {} exceeded",
                    config.subgroup_bound
                ),
            ));
            continue;
        };
        for inst in instances(id, &ctx, subs, &normals, config)? {
            match check_theorem(id, &ctx, &inst) {
                Ok(Outcome::Checked(records)) => out.extend(records),
                Ok(Outcome::NotApplicable(_)) => {}
                Err(Error::Limit(reason)) => {
                    let mut r = CheckRecord::skipped(id.as_str(), &spec, reason);
                    r.subgroup = inst.subgroup.as_ref().map(|s| s.elements().to_vec());
                    r.normal = inst.normal.as_ref().map(|s| s.elements().to_vec());
                    r.n = inst.n;
                    out.push(r);
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}
