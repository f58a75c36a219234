use crate::decomp::{
    self, j_decomposition, semilattice_form, slices, Decomposition, SliceOversemigroup,
};
use crate::error::{Result, SgError};
use crate::green;
use crate::relation::Relation;
use crate::search::{self, SearchBudget};
use crate::semigroup::{iso_over_subset, FiniteSemigroup, ReesQuotient, SubsetHandle};
use crate::starpair::{self, derive, induced_star_pair, StarPair, Verdict};
use serde::{Deserialize, Serialize};

/// A subsemigroup S sitting inside a candidate quotient semigroup Q.
#[derive(Debug, Clone)]
pub struct Embedding {
    q: FiniteSemigroup,
    s: SubsetHandle,
}

impl Embedding {
    pub fn new(q: FiniteSemigroup, members: &[usize]) -> Result<Embedding> {
        let s = SubsetHandle::subsemigroup(&q, members)?;
        Ok(Embedding { q, s })
    }

    pub fn full(q: &FiniteSemigroup) -> Embedding {
        let members: Vec<usize> = q.elements().collect();
        Embedding::new(q.clone(), &members).expect("whole semigroup is a subsemigroup")
    }

    pub fn q(&self) -> &FiniteSemigroup {
        &self.q
    }

    pub fn s(&self) -> &SubsetHandle {
        &self.s
    }

    /// S as an abstract semigroup on its own indices.
    pub fn sub(&self) -> Result<FiniteSemigroup> {
        self.q.restrict(self.s.members())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub enum OrderFailure {
    /// element of Q with no representation a#b
    Unrepresentable { q: usize },
    /// square-cancellable element of S outside every subgroup of Q
    OutsideSubgroup { a: usize },
}

/// Outcome of check_left_order. Witnesses are (q, a, b) triples in Q's
/// indexing with q = a#b; all_witnesses_straight records whether every
/// chosen witness also satisfies a R b in Q.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrderReport {
    pub is_weak_left_order: bool,
    pub is_left_order: bool,
    pub is_straight: bool,
    pub is_fully_stratified: bool,
    pub is_stratified: bool,
    pub all_witnesses_straight: bool,
    pub witnesses: Vec<(usize, usize, usize)>,
    pub failures: Vec<OrderFailure>,
}

impl OrderReport {
    /// The Lemma 4.1 notion: representations exist and are straight,
    /// with no demand on square-cancellable elements.
    pub fn is_straight_weak(&self) -> bool {
        self.is_weak_left_order && self.all_witnesses_straight
    }
}

/// Decide whether S is a (weak / straight / fully stratified) left
/// order in Q, picking straight witnesses when possible and then
/// lexicographically least ones.
pub fn check_left_order(e: &Embedding) -> Result<OrderReport> {
    let q = e.q();
    let n = q.order();
    let greens = green::green_equivalences(q)?;
    let members = e.s().members();

    // group inverse a# for each member that lies in a subgroup of Q
    let mut sharp: Vec<Option<usize>> = Vec::with_capacity(members.len());
    for &a in members {
        let info = green::group_h_class_with(q, a, &greens.h)?;
        sharp.push(if info.in_subgroup { info.inverse } else { None });
    }

    let mut witnesses = Vec::new();
    let mut failures = Vec::new();
    let mut all_straight = true;
    for target in 0..n {
        let mut best: Option<(usize, usize, bool)> = None;
        for (ai, &a) in members.iter().enumerate() {
            let Some(ash) = sharp[ai] else { continue };
            for &b in members {
                if q.mul(ash, b) != target {
                    continue;
                }
                let straight = greens.r.get(a, b);
                let better = match best {
                    None => true,
                    Some((_, _, bs)) => straight && !bs,
                };
                if better {
                    best = Some((a, b, straight));
                    if straight {
                        break;
                    }
                }
            }
            if matches!(best, Some((_, _, true))) {
                break;
            }
        }
        match best {
            Some((a, b, straight)) => {
                witnesses.push((target, a, b));
                all_straight &= straight;
            }
            None => failures.push(OrderFailure::Unrepresentable { q: target }),
        }
    }
    let is_weak = failures.is_empty();

    let sub = e.sub()?;
    let sq = green::square_cancellable(&sub)?;
    let mut in_subgroups = true;
    for &i in &sq {
        let a = members[i];
        let info = green::group_h_class_with(q, a, &greens.h)?;
        if !info.in_subgroup {
            in_subgroups = false;
            failures.push(OrderFailure::OutsideSubgroup { a });
        }
    }
    let is_left = is_weak && in_subgroups;
    let is_straight = is_left && all_straight;

    let mut is_fully_stratified = false;
    let mut is_stratified = false;
    if is_straight {
        let induced = induced_star_pair(q, e.s())?;
        let spre = green::starred_preorders(&sub);
        is_fully_stratified = induced.leq_l().same_pairs(&spre.leq_lstar)
            && induced.leq_r().same_pairs(&spre.leq_rstar);
        let lp = induced.leq_l().symmetrize()?;
        let rp = induced.leq_r().symmetrize()?;
        let seq = green::starred_equivalences(&sub)?;
        is_stratified = lp.same_pairs(&seq.lstar) && rp.same_pairs(&seq.rstar);
    }

    let report = OrderReport {
        is_weak_left_order: is_weak,
        is_left_order: is_left,
        is_straight,
        is_fully_stratified,
        is_stratified,
        all_witnesses_straight: all_straight,
        witnesses,
        failures,
    };
    assert!(!report.is_straight || report.is_left_order);
    assert!(!report.is_left_order || report.is_weak_left_order);
    Ok(report)
}

/// Replay a serialized OrderReport witness against the embedding.
pub fn replay_order_witness(q: &FiniteSemigroup, w: (usize, usize, usize)) -> Result<bool> {
    let (target, a, b) = w;
    let info = green::group_h_class(q, a)?;
    let Some(ash) = (if info.in_subgroup { info.inverse } else { None }) else {
        return Ok(false);
    };
    Ok(q.mul(ash, b) == target)
}

/// Lemma 2.1 (A)/(B) and Lemma 2.2 for a straight left order.
pub fn check_zero_lemmas(e: &Embedding) -> Result<Vec<Verdict>> {
    let report = check_left_order(e)?;
    if !report.is_straight {
        return Err(SgError::HypothesisNotMet(
            "zero lemmas assume a straight left order".into(),
        ));
    }
    let q = e.q();
    let sub = e.sub()?;
    let mut out = Vec::new();

    let a_holds = sub.has_zero() == q.has_zero();
    out.push(if a_holds {
        Verdict::pass("Lemma-2.1-A", "S has a zero iff Q has a zero")
    } else {
        Verdict::fail("Lemma-2.1-A", vec![], "zero existence differs between S and Q")
    });

    if sub.has_zero() {
        let s_free = sub.zero_divisor_witness().is_none();
        let q_free = q.zero_divisor_witness().is_none();
        out.push(if s_free == q_free {
            Verdict::pass("Lemma-2.1-B", "zero-divisor freeness transfers")
        } else {
            let w = sub
                .zero_divisor_witness()
                .or(q.zero_divisor_witness())
                .map(|(x, y)| vec![x, y])
                .unwrap_or_default();
            Verdict::fail("Lemma-2.1-B", w, "zero-divisor freeness differs")
        });
    } else {
        out.push(Verdict::pass("Lemma-2.1-B", "vacuous: S has no zero"));
    }

    let q0 = q.adjoin_zero();
    let mut members0 = e.s().members().to_vec();
    members0.push(q.order());
    let e0 = Embedding::new(q0, &members0)?;
    let report0 = check_left_order(&e0)?;
    out.push(if report0.is_straight {
        Verdict::pass("Lemma-2.2", "S^0 is a straight left order in Q^0")
    } else {
        Verdict::fail("Lemma-2.2", vec![], "straightness lost after adjoining zeroes")
    });
    Ok(out)
}

/// Every L*-class and R*-class contains an idempotent.
pub fn check_abundant(s: &FiniteSemigroup) -> Result<Verdict> {
    let stars = green::starred_equivalences(s)?;
    let idem = s.idempotents();
    for a in s.elements() {
        if !idem.iter().any(|&e| stars.lstar.get(a, e)) {
            return Ok(Verdict::fail(
                "abundant",
                vec![a],
                "L*-class without an idempotent",
            ));
        }
        if !idem.iter().any(|&e| stars.rstar.get(a, e)) {
            return Ok(Verdict::fail(
                "abundant",
                vec![a],
                "R*-class without an idempotent",
            ));
        }
    }
    Ok(Verdict::pass("abundant", "every starred class has an idempotent"))
}

/// Idempotent connectedness, with the Lemma 2.3 characterization
/// cross-checked whenever IC holds.
pub fn check_ic(s: &FiniteSemigroup) -> Result<Verdict> {
    if !check_abundant(s)?.holds {
        return Err(SgError::NotAbundant);
    }
    let n = s.order();
    let spre = green::starred_preorders(s);
    let idem = s.idempotents();
    for a in 0..n {
        for &e in &idem {
            if spre.leq_lstar.get(e, a) && !(0..n).any(|b| s.mul(a, e) == s.mul(b, a)) {
                return Ok(Verdict::fail(
                    "idempotent-connected",
                    vec![a, e],
                    "no b with ae = ba",
                ));
            }
            if spre.leq_rstar.get(e, a) && !(0..n).any(|b| s.mul(e, a) == s.mul(a, b)) {
                return Ok(Verdict::fail(
                    "idempotent-connected",
                    vec![a, e],
                    "no b with ea = ab",
                ));
            }
        }
    }
    // Lemma 2.3: in an IC abundant semigroup, a <=_L* b iff a L* cb for
    // some c, and dually.
    let seq = green::starred_equivalences(s)?;
    for a in 0..n {
        for b in 0..n {
            let l_wit = (0..n).any(|c| seq.lstar.get(a, s.mul(c, b)));
            if spre.leq_lstar.get(a, b) != l_wit {
                return Err(SgError::InternalInconsistency(format!(
                    "IC holds but the Lemma 2.3 characterization fails at ({a}, {b})"
                )));
            }
            let r_wit = (0..n).any(|c| seq.rstar.get(a, s.mul(b, c)));
            if spre.leq_rstar.get(a, b) != r_wit {
                return Err(SgError::InternalInconsistency(format!(
                    "IC holds but the dual Lemma 2.3 characterization fails at ({a}, {b})"
                )));
            }
        }
    }
    Ok(Verdict::pass("idempotent-connected", "IC holds; Lemma 2.3 cross-check passed"))
}

/// The principal factors: slices of the J-class decomposition.
pub fn principal_factors(q: &FiniteSemigroup) -> Result<Vec<ReesQuotient>> {
    let d = j_decomposition(q)?;
    Ok(slices(&d)?.into_iter().map(|s| s.quotient).collect())
}

fn primitive_nonzero_idempotents(s: &FiniteSemigroup) -> Option<Vec<usize>> {
    let zero = if s.order() > 1 { s.zero() } else { None };
    let idem: Vec<usize> = s
        .idempotents()
        .into_iter()
        .filter(|&e| Some(e) != zero)
        .collect();
    let bad: Vec<usize> = idem
        .iter()
        .copied()
        .filter(|&e| {
            idem.iter()
                .any(|&f| f != e && s.mul(e, f) == f && s.mul(f, e) == f)
        })
        .collect();
    if bad.is_empty() {
        None
    } else {
        Some(bad)
    }
}

/// Completely (0-)simple, decided by two independent routes that must
/// agree: the J-class/regularity/primitivity route and the ideal
/// structure route (for finite semigroups, 0-simple already implies
/// completely 0-simple).
pub fn check_completely_0_simple(s: &FiniteSemigroup) -> Result<Verdict> {
    let n = s.order();
    let with_zero = n > 1 && s.has_zero();
    let zero = if with_zero { s.zero() } else { None };

    // route one: regular, a single non-zero J-class, primitive non-zero
    // idempotents
    let eq = green::green_equivalences(s)?;
    let nonzero_classes = eq
        .j
        .classes()
        .into_iter()
        .filter(|c| Some(c[0]) != zero || c.len() > 1)
        .count();
    let route_one_fail: Option<(Vec<usize>, String)> = if !s.is_regular() {
        Some((vec![], "not regular".into()))
    } else if nonzero_classes != 1 {
        Some((vec![], format!("{nonzero_classes} non-zero J-classes")))
    } else if let Some(bad) = primitive_nonzero_idempotents(s) {
        Some((bad, "non-primitive non-zero idempotent".into()))
    } else {
        None
    };

    // route two: ideal structure
    let pre = green::green_preorders(s);
    let route_two = if with_zero {
        let z = zero.unwrap();
        let zero_simple = (0..n)
            .filter(|&a| a != z)
            .all(|a| (0..n).all(|b| pre.leq_j.get(b, a)));
        let square_nonzero = (0..n).any(|a| (0..n).any(|b| s.mul(a, b) != z));
        zero_simple && square_nonzero
    } else {
        (0..n).all(|a| (0..n).all(|b| pre.leq_j.get(b, a)))
    };

    if route_one_fail.is_none() != route_two {
        return Err(SgError::InternalInconsistency(
            "complete (0-)simplicity routes disagree".into(),
        ));
    }
    Ok(match route_one_fail {
        None => Verdict::pass(
            "completely-0-simple",
            if with_zero {
                "completely 0-simple"
            } else {
                "completely simple"
            },
        ),
        Some((w, why)) => Verdict::fail("completely-0-simple", w, why),
    })
}

/// All principal factors completely (0-)simple.
pub fn check_completely_semisimple(q: &FiniteSemigroup) -> Result<Verdict> {
    for (alpha, factor) in principal_factors(q)?.iter().enumerate() {
        let v = check_completely_0_simple(&factor.quotient)?;
        if !v.holds {
            return Ok(Verdict::fail(
                "completely-semisimple",
                vec![alpha],
                format!("principal factor {alpha} is not completely (0-)simple: {}", v.note),
            ));
        }
    }
    Ok(Verdict::pass(
        "completely-semisimple",
        "all principal factors completely (0-)simple",
    ))
}

fn chain_depth_within(leq: &Relation, class: &[usize]) -> usize {
    // longest strict <= chain inside one class of d
    fn depth(leq: &Relation, class: &[usize], memo: &mut Vec<Option<usize>>, i: usize) -> usize {
        if let Some(v) = memo[i] {
            return v;
        }
        let a = class[i];
        let mut best = 1;
        for (j, &b) in class.iter().enumerate() {
            if leq.get(b, a) && !leq.get(a, b) {
                best = best.max(1 + depth(leq, class, memo, j));
            }
        }
        memo[i] = Some(best);
        best
    }
    let mut memo = vec![None; class.len()];
    (0..class.len())
        .map(|i| depth(leq, class, &mut memo, i))
        .max()
        .unwrap_or(1)
}

/// The descending chain conditions M_L* and M_R*: automatic for finite
/// input, reported with the computed strict-descent depths.
pub fn check_chain_conditions(pair: &StarPair, d: &Relation) -> Result<Vec<Verdict>> {
    let d = d.clone().into_equivalence()?;
    if d.universe() != pair.base().order() {
        return Err(SgError::UniverseMismatch {
            got: d.universe(),
            want: pair.base().order(),
        });
    }
    let mut out = Vec::new();
    for (name, leq) in [("M_L*", pair.leq_l()), ("M_R*", pair.leq_r())] {
        let depth = d
            .classes()
            .iter()
            .map(|c| chain_depth_within(leq, c))
            .max()
            .unwrap_or(1);
        out.push(Verdict::pass(
            name,
            format!("finite input satisfies the DCC; max strict chain depth {depth}"),
        ));
    }
    Ok(out)
}

/// One slice of an embedding: the Q-side Rees quotient and the image of
/// the S-side slice inside it.
pub struct SlicePair {
    pub alpha: usize,
    pub embedding: Embedding,
    /// indices of the S-class image inside the slice quotient
    pub class_image: Vec<usize>,
    /// index of the slice zero inside the quotient, when present
    pub zero: Option<usize>,
}

/// Cut an embedding along a decomposition of Q: S_alpha = Q_alpha
/// intersected with S, each slice of S viewed inside the matching slice
/// of Q.
pub fn slice_pairs(e: &Embedding, dq: &Decomposition) -> Result<Vec<SlicePair>> {
    if dq.base().table() != e.q().table() {
        return Err(SgError::HypothesisNotMet(
            "decomposition is not over Q".into(),
        ));
    }
    let q_slices = slices(dq)?;
    let mut out = Vec::new();
    for slice in q_slices {
        let alpha = slice.alpha;
        let class = &dq.classes()[alpha];
        let s_class: Vec<usize> = class
            .iter()
            .copied()
            .filter(|&x| e.s().contains(x))
            .collect();
        if s_class.is_empty() {
            return Err(SgError::InternalInconsistency(format!(
                "S misses Q-class {alpha}; a straight left order meets every class"
            )));
        }
        let mut members: Vec<usize> = s_class
            .iter()
            .map(|&x| slice.project(x).expect("class lies in its closed ideal"))
            .collect();
        let class_image = members.clone();
        let zero = slice.quotient.zero();
        let s_lower_nonempty = e
            .s()
            .members()
            .iter()
            .any(|&x| slice.lower_ideal.contains(x));
        if s_lower_nonempty {
            members.push(zero.expect("non-empty lower ideal has a zero"));
        }
        members.sort_unstable();
        let embedding = Embedding::new(slice.quotient.quotient.clone(), &members)?;
        out.push(SlicePair {
            alpha,
            embedding,
            class_image,
            zero,
        });
    }
    Ok(out)
}

/// The section-four battery: Lemma 4.1, Corollary 4.2, Proposition 4.3
/// and Proposition 4.4 over one embedding and one decomposition of Q.
pub fn harness_slicing(e: &Embedding, dq: &Decomposition) -> Result<Vec<Verdict>> {
    let report = check_left_order(e)?;
    if !report.is_straight {
        return Err(SgError::HypothesisNotMet(
            "slicing theorems assume a straight left order".into(),
        ));
    }
    let pairs = slice_pairs(e, dq)?;
    let sub = e.sub()?;
    let s_stars = green::starred_equivalences(&sub)?;
    let mut out = Vec::new();

    let mut slice_reports = Vec::new();
    for p in &pairs {
        slice_reports.push((p.alpha, check_left_order(&p.embedding)?));
    }

    // Lemma 4.1: each slice pair is a straight weak left order
    let l41 = slice_reports
        .iter()
        .find(|(_, r)| !r.is_straight_weak());
    out.push(match l41 {
        None => Verdict::pass("Lemma-4.1", "every slice pair is a straight weak left order"),
        Some((alpha, _)) => Verdict::fail(
            "Lemma-4.1",
            vec![*alpha],
            "slice pair is not a straight weak left order",
        ),
    });

    // Corollary 4.2: slice is a straight left order iff square
    // cancellability transfers from the slice to S
    let members = e.s().members();
    let mut c42: Option<Vec<usize>> = None;
    for (p, (_, r)) in pairs.iter().zip(&slice_reports) {
        let slice_sub = p.embedding.sub()?;
        let slice_sq = green::square_cancellable(&slice_sub)?;
        let slice_members = p.embedding.s().members();
        let s_in_class: Vec<usize> = dq.classes()[p.alpha]
            .iter()
            .copied()
            .filter(|&x| e.s().contains(x))
            .collect();
        let transfers = s_in_class.iter().zip(&p.class_image).all(|(&x, &img)| {
            let pos = slice_members
                .binary_search(&img)
                .expect("class image inside the slice");
            let si = members.binary_search(&x).expect("class element in S");
            !slice_sq.contains(&pos) || s_stars.hstar.get(si, sub.mul(si, si))
        });
        if transfers != r.is_straight {
            c42 = Some(vec![p.alpha]);
            break;
        }
    }
    out.push(match c42 {
        None => Verdict::pass(
            "Corollary-4.2",
            "slice straightness matches square-cancellability transfer",
        ),
        Some(w) => Verdict::fail("Corollary-4.2", w, "biconditional fails"),
    });

    // Proposition 4.3: under its hypotheses every slice is a straight
    // left order
    let q_cr = green::is_completely_regular(e.q())?;
    let s_abundant = check_abundant(&sub)?.holds;
    let ds = decomp::from_partition(
        &sub,
        dq.classes()
            .iter()
            .map(|c| {
                c.iter()
                    .filter(|&&x| e.s().contains(x))
                    .map(|&x| members.binary_search(&x).unwrap())
                    .collect()
            })
            .collect(),
        dq.poset().clone(),
    )?;
    let mut p43 = Verdict::pass("Proposition-4.3", "hypotheses hold where applicable");
    let mut any_applicable = false;
    for (p, (_, r)) in pairs.iter().zip(&slice_reports) {
        let star_ok = s_abundant && decomp::star_ideal_check(&ds, p.alpha)?.holds;
        if q_cr || star_ok {
            any_applicable = true;
            if !r.is_straight {
                p43 = Verdict::fail(
                    "Proposition-4.3",
                    vec![p.alpha],
                    "hypotheses hold but the slice is not a straight left order",
                );
                break;
            }
        }
    }
    if p43.holds && !any_applicable {
        p43 = Verdict::pass("Proposition-4.3", "hypotheses apply to no slice; vacuous");
    }
    out.push(p43);

    // Proposition 4.4, first part: P is the <=_J order on Q iff P is
    // the <=_j order on S
    let induced = induced_star_pair(e.q(), e.s())?;
    let der = derive(&induced)?;
    if !der.leq_j_is_preorder {
        return Err(SgError::InternalInconsistency(
            "<=_j fails to be a preorder on a straight left order".into(),
        ));
    }
    let q_pre = green::green_preorders(e.q());
    let q_side = preorder_matches(dq, &q_pre.leq_j);
    let s_side = preorder_matches(&ds, &der.leq_j);
    out.push(if q_side == s_side {
        Verdict::pass(
            "Proposition-4.4-orders",
            format!("both sides of the biconditional are {q_side}"),
        )
    } else {
        Verdict::fail("Proposition-4.4-orders", vec![], "order identification differs")
    });

    // second part, only for stratified embeddings: P is the J-order on
    // Q iff P is the J*-order on S
    if report.is_stratified {
        let q_eq = green::green_equivalences(e.q())?;
        let q_side = equivalence_matches(dq, &q_eq.j);
        let jstar = green::jstar_preorder(&sub)?.symmetrize()?;
        let s_side = equivalence_matches(&ds, &jstar);
        out.push(if q_side == s_side {
            Verdict::pass(
                "Proposition-4.4-stratified",
                format!("both sides of the biconditional are {q_side}"),
            )
        } else {
            Verdict::fail(
                "Proposition-4.4-stratified",
                vec![],
                "class identification differs",
            )
        });
    } else {
        out.push(Verdict::pass(
            "Proposition-4.4-stratified",
            "embedding is not stratified; second biconditional not applicable",
        ));
    }
    Ok(out)
}

fn preorder_matches(d: &Decomposition, leq: &Relation) -> bool {
    let n = d.base().order();
    (0..n).all(|a| (0..n).all(|b| d.poset().leq(d.class_of(a), d.class_of(b)) == leq.get(a, b)))
}

fn equivalence_matches(d: &Decomposition, eq: &Relation) -> bool {
    let n = d.base().order();
    (0..n).all(|a| (0..n).all(|b| (d.class_of(a) == d.class_of(b)) == eq.get(a, b)))
}

/// One declared left-quotient target per semilattice class: the class
/// (listed in sorted order) maps into `t` via `embed`.
#[derive(Debug, Clone)]
pub struct SemilatticeTarget {
    pub t: FiniteSemigroup,
    pub embed: Vec<usize>,
}

impl SemilatticeTarget {
    /// The class as its own target.
    pub fn identity(d: &Decomposition, alpha: usize) -> Result<SemilatticeTarget> {
        let class = &d.classes()[alpha];
        let t = d.base().restrict(class)?;
        Ok(SemilatticeTarget {
            t,
            embed: (0..class.len()).collect(),
        })
    }
}

fn semilattice_slice_orders(
    d: &Decomposition,
    targets: &[SemilatticeTarget],
) -> Result<Vec<SliceOversemigroup>> {
    let s_slices = slices(d)?;
    let mut overs = Vec::new();
    for (slice, target) in s_slices.iter().zip(targets) {
        let class = &d.classes()[slice.alpha];
        if target.embed.len() != class.len() {
            return Err(SgError::SliceMismatch(slice.alpha));
        }
        let quotient = &slice.quotient.quotient;
        let lower_empty = slice.lower_ideal.is_empty();
        let (w, zero_image) = if lower_empty {
            (target.t.clone(), None)
        } else {
            let w = target.t.adjoin_zero();
            let z = w.order() - 1;
            (w, Some(z))
        };
        let mut embed = vec![usize::MAX; quotient.order()];
        for (pos, &x) in class.iter().enumerate() {
            let qi = slice.project(x).expect("class inside its slice");
            embed[qi] = target.embed[pos];
        }
        if let Some(zq) = slice.quotient.zero() {
            embed[zq] = zero_image.ok_or(SgError::SliceMismatch(slice.alpha))?;
        }
        if embed.iter().any(|&v| v == usize::MAX) {
            return Err(SgError::SliceMismatch(slice.alpha));
        }
        overs.push(SliceOversemigroup { w, embed });
    }
    Ok(overs)
}

/// The semilattice theorem: condition (A) on the layered pair and, at
/// bounded scale, the existence half (B) with its semilattice-of-
/// subsemigroups conclusion.
pub fn harness_semilattice(
    s: &FiniteSemigroup,
    d: &Decomposition,
    targets: &[SemilatticeTarget],
    budget: &SearchBudget,
) -> Result<Vec<Verdict>> {
    if !semilattice_form(d)?.holds {
        return Err(SgError::HypothesisNotMet(
            "decomposition is not a semilattice of subsemigroups".into(),
        ));
    }
    for (alpha, target) in targets.iter().enumerate() {
        let image: Vec<usize> = target.embed.clone();
        let e = Embedding::new(target.t.clone(), &image)?;
        let class = &d.classes()[alpha];
        let class_sub = s.restrict(class)?;
        if e.sub()?.table() != class_sub.table() {
            return Err(SgError::SliceMismatch(alpha));
        }
        if !check_left_order(&e)?.is_straight {
            return Err(SgError::HypothesisNotMet(format!(
                "class {alpha} is not a straight left order in its target"
            )));
        }
    }

    let overs = semilattice_slice_orders(d, targets)?;
    let layered = decomp::layered_preorders(s, d, &overs)?;
    let mut out = vec![layered.lemma_restriction.clone(), layered.lemma_symmetrization.clone()];

    let pair = match starpair::make_star_pair(s, layered.leq_l.clone(), layered.leq_r.clone()) {
        Ok(p) => p,
        Err(err) => {
            out.push(Verdict::fail(
                "Theorem-6.1-A-star-pair",
                vec![],
                format!("layered relations are not a *-pair: {err}"),
            ));
            return Ok(out);
        }
    };
    out.push(Verdict::pass(
        "Theorem-6.1-A-star-pair",
        "layered relations form a *-pair",
    ));
    let der = derive(&pair)?;
    out.push(starpair::check_theorem54_ii_with(
        &pair,
        &der,
        &green::square_cancellable(s)?,
    )?);
    let g = starpair::check_g_conditions_with(&pair, &der)?;
    let gi = g
        .into_iter()
        .find(|v| v.condition == "Gi")
        .expect("Gi verdict present");
    out.push(gi);

    let a_holds = out.iter().all(|v| v.holds);
    match search::find_quotient_semigroup(s, &pair, budget) {
        Ok(Some(e)) => {
            // conclusion: Q is a semilattice Y of subsemigroups Q_alpha
            // with Q_alpha isomorphic to T_alpha over S_alpha
            let mut ok = a_holds;
            let mut note = String::from("quotient found");
            let q = e.q();
            let q_eq = green::green_equivalences(q)?;
            // Q_alpha: elements H-related (via D within the layer) to S_alpha
            let mut q_class = vec![usize::MAX; q.order()];
            for p in q.elements() {
                for (alpha, class) in d.classes().iter().enumerate() {
                    if class.iter().any(|&a| q_eq.h.get(p, a)) {
                        q_class[p] = alpha;
                    }
                }
            }
            if q_class.contains(&usize::MAX) {
                ok = false;
                note = "an element of Q misses every layer".into();
            } else {
                'outer: for p in q.elements() {
                    for r in q.elements() {
                        let meet = d
                            .poset()
                            .meet(q_class[p], q_class[r])
                            .expect("meet exists");
                        if q_class[q.mul(p, r)] != meet {
                            ok = false;
                            note = "Q is not a semilattice of the layers".into();
                            break 'outer;
                        }
                    }
                }
                if ok {
                    for (alpha, target) in targets.iter().enumerate() {
                        let q_alpha: Vec<usize> =
                            q.elements().filter(|&p| q_class[p] == alpha).collect();
                        let q_alpha_sub = q.restrict(&q_alpha)?;
                        let s_positions: Vec<usize> = d.classes()[alpha]
                            .iter()
                            .map(|&a| q_alpha.binary_search(&a).unwrap())
                            .collect();
                        let iso = iso_over_subset(
                            &q_alpha_sub,
                            &target.t,
                            &s_positions,
                            &target.embed,
                            crate::semigroup::ISO_SEARCH_CAP,
                        )?;
                        if iso.is_none() {
                            ok = false;
                            note = format!("Q_{alpha} is not isomorphic to its target over S_{alpha}");
                            break;
                        }
                    }
                }
            }
            out.push(if ok {
                Verdict::pass("Theorem-6.1-B", note)
            } else if a_holds {
                Verdict::fail("Theorem-6.1-B", vec![], note)
            } else {
                Verdict::fail(
                    "Theorem-6.1-B",
                    vec![],
                    "quotient exists although condition (A) fails",
                )
            });
        }
        Ok(None) => {
            out.push(if a_holds {
                Verdict::pass(
                    "Theorem-6.1-B",
                    "bounded-consistent: no quotient within budget, existence not decided",
                )
            } else {
                Verdict::pass(
                    "Theorem-6.1-B",
                    "bounded-consistent: (A) fails and no quotient within budget",
                )
            });
        }
        Err(SgError::Exhausted(msg)) => {
            out.push(Verdict::pass(
                "Theorem-6.1-B",
                format!("bounded-consistent: search exhausted ({msg})"),
            ));
        }
        Err(err) => return Err(err),
    }
    Ok(out)
}

/// The fully stratified theorem: forward slice transfer when an
/// embedding is supplied, and the R*-cancellation criterion with a
/// bounded existence search for the converse.
pub fn harness_fully_stratified(
    s: &FiniteSemigroup,
    d: &Decomposition,
    forward: Option<(&Embedding, &Decomposition)>,
    budget: &SearchBudget,
) -> Result<Vec<Verdict>> {
    if !check_ic(s)?.holds {
        return Err(SgError::HypothesisNotMet(
            "theorem assumes an IC abundant semigroup".into(),
        ));
    }
    let mut out = Vec::new();

    // intermediate claim: each class is a union of L*- and R*-classes
    let stars = green::starred_equivalences(s)?;
    let mut star_union = Verdict::pass(
        "Theorem-7.1-star-classes",
        "each class is a union of starred classes",
    );
    'star: for (alpha, class) in d.classes().iter().enumerate() {
        for &a in class {
            for b in s.elements() {
                if (stars.lstar.get(a, b) || stars.rstar.get(a, b)) && !class.contains(&b) {
                    star_union = Verdict::fail(
                        "Theorem-7.1-star-classes",
                        vec![alpha, a, b],
                        "starred class escapes the layer",
                    );
                    break 'star;
                }
            }
        }
    }
    out.push(star_union);

    if let Some((e, dq)) = forward {
        let report = check_left_order(e)?;
        if !(report.is_straight && report.is_fully_stratified) {
            return Err(SgError::HypothesisNotMet(
                "forward direction assumes a fully stratified straight left order".into(),
            ));
        }
        let pairs = slice_pairs(e, dq)?;
        let mut fwd = Verdict::pass(
            "Theorem-7.1-forward",
            "every slice is an abundant fully stratified straight left order",
        );
        for p in &pairs {
            let r = check_left_order(&p.embedding)?;
            let abundant = check_abundant(&p.embedding.sub()?)?.holds;
            if !(r.is_straight && r.is_fully_stratified && abundant) {
                fwd = Verdict::fail(
                    "Theorem-7.1-forward",
                    vec![p.alpha],
                    "slice fails abundance or full stratification or straightness",
                );
                break;
            }
        }
        out.push(fwd);
    }

    // converse criterion: a^2 b R* a^2 c implies ab R* ac for square
    // cancellable a
    let sq = green::square_cancellable(s)?;
    let n = s.order();
    let mut criterion: Option<Vec<usize>> = None;
    'crit: for &a in &sq {
        let a2 = s.mul(a, a);
        for b in 0..n {
            for c in 0..n {
                if stars.rstar.get(s.mul(a2, b), s.mul(a2, c))
                    && !stars.rstar.get(s.mul(a, b), s.mul(a, c))
                {
                    criterion = Some(vec![a, b, c]);
                    break 'crit;
                }
            }
        }
    }
    out.push(match &criterion {
        None => Verdict::pass("Theorem-7.1-criterion", "R*-cancellation condition holds"),
        Some(w) => Verdict::fail(
            "Theorem-7.1-criterion",
            w.clone(),
            "R*-cancellation condition fails",
        ),
    });

    // bounded existence side of the equivalence
    let starred = starpair::starred_pair(s)?;
    let found = match search::find_quotient_semigroup(s, &starred, budget) {
        Ok(res) => res,
        Err(SgError::Exhausted(msg)) => {
            out.push(Verdict::pass(
                "Theorem-7.1-converse",
                format!("bounded-consistent: search exhausted ({msg})"),
            ));
            return Ok(out);
        }
        Err(err) => return Err(err),
    };
    out.push(match (criterion.is_none(), found) {
        (true, Some(_)) => Verdict::pass(
            "Theorem-7.1-converse",
            "criterion holds and a fully stratified quotient was found",
        ),
        (true, None) => Verdict::pass(
            "Theorem-7.1-converse",
            "bounded-consistent: criterion holds, no quotient within budget",
        ),
        (false, None) => Verdict::pass(
            "Theorem-7.1-converse",
            "bounded-consistent: criterion fails and no quotient within budget",
        ),
        (false, Some(e)) => Verdict::fail(
            "Theorem-7.1-converse",
            vec![e.q().order()],
            "criterion fails yet a fully stratified quotient exists",
        ),
    });
    Ok(out)
}

/// The completely semisimple characterization: conditions (ii) and
/// (iii), plus (i) when a candidate quotient is supplied, with the
/// checkable implications between them.
pub fn harness_semisimple(
    s: &FiniteSemigroup,
    pair: &StarPair,
    q: Option<&Embedding>,
    budget: &SearchBudget,
) -> Result<Vec<Verdict>> {
    let mut out = Vec::new();
    let der = derive(pair)?;

    // (ii): J' = D' plus the chain conditions
    let jd = der.leq_j_is_preorder && der.jp.same_pairs(&der.dp);
    out.push(if jd {
        Verdict::pass("Theorem-8.1-ii-JD", "J' = D'")
    } else {
        Verdict::fail("Theorem-8.1-ii-JD", vec![], "J' differs from D'")
    });
    if der.leq_j_is_preorder {
        out.extend(check_chain_conditions(pair, &der.dp)?);
    }

    // (iii): the <=_j decomposition with each slice a (straight) left
    // order in a completely (0-)simple semigroup, plus the *-pair
    // cancellation and Gi conditions
    out.push(starpair::check_theorem54_ii_with(
        pair,
        &der,
        &green::square_cancellable(s)?,
    )?);
    let g = starpair::check_g_conditions_with(pair, &der)?;
    out.push(
        g.into_iter()
            .find(|v| v.condition == "Gi")
            .expect("Gi verdict present"),
    );
    if der.leq_j_is_preorder {
        let d = decomp::from_preorder(s, &der.leq_j)?;
        let s_slices = slices(&d)?;
        let mut slice_verdict = Verdict::pass(
            "Theorem-8.1-iii-slices",
            "every slice embeds as a straight left order in a completely (0-)simple semigroup",
        );
        for slice in &s_slices {
            let base = &slice.quotient.quotient;
            let mut found_left = false;
            let mut found_straight = false;
            let search_res = (|| -> Result<()> {
                for n in base.order()..=budget.max_order {
                    search::enumerate_extensions_with(base, n, budget, |e| {
                        if !check_completely_0_simple(e.q())?.holds {
                            return Ok(());
                        }
                        let r = check_left_order(e)?;
                        if r.is_left_order {
                            found_left = true;
                        }
                        if r.is_straight {
                            found_straight = true;
                            return Err(SgError::Exhausted("found".into()));
                        }
                        Ok(())
                    })?;
                }
                Ok(())
            })();
            match search_res {
                Ok(()) | Err(SgError::Exhausted(_)) => {}
                Err(err) => return Err(err),
            }
            if found_straight {
                continue;
            }
            slice_verdict = if found_left {
                Verdict::fail(
                    "Theorem-8.1-iii-slices",
                    vec![slice.alpha],
                    "left order target found but never straight; the parenthetical readings diverge here",
                )
            } else {
                Verdict::pass(
                    "Theorem-8.1-iii-slices",
                    format!(
                        "bounded-consistent: no completely (0-)simple target found for slice {} within budget",
                        slice.alpha
                    ),
                )
            };
            if !slice_verdict.holds {
                break;
            }
        }
        out.push(slice_verdict);
    } else {
        out.push(Verdict::fail(
            "Theorem-8.1-iii-slices",
            vec![],
            "<=_j is not a preorder, no slice decomposition available",
        ));
    }

    // (i) when a quotient is supplied
    if let Some(e) = q {
        let report = check_left_order(e)?;
        let induced = induced_star_pair(e.q(), e.s())?;
        let matches = induced.leq_l().same_pairs(pair.leq_l())
            && induced.leq_r().same_pairs(pair.leq_r());
        let css = check_completely_semisimple(e.q())?.holds;
        let i_holds = report.is_straight && matches && css;
        out.push(if i_holds {
            Verdict::pass(
                "Theorem-8.1-i",
                "straight left order in a completely semisimple quotient inducing the pair",
            )
        } else {
            Verdict::fail("Theorem-8.1-i", vec![], "condition (i) fails for the supplied quotient")
        });
        if i_holds {
            let ii_ok = out
                .iter()
                .filter(|v| v.condition.starts_with("Theorem-8.1-ii") || v.condition.starts_with("M_"))
                .all(|v| v.holds);
            let iii_ok = out
                .iter()
                .filter(|v| {
                    v.condition.starts_with("Theorem-8.1-iii")
                        || v.condition == "II"
                        || v.condition == "Gi"
                })
                .all(|v| v.holds);
            out.push(if ii_ok && iii_ok {
                Verdict::pass("Theorem-8.1-implications", "(i) implies (ii) and (iii) as verified")
            } else {
                Verdict::fail(
                    "Theorem-8.1-implications",
                    vec![],
                    "(i) holds but a consequence fails",
                )
            });
        }
    } else {
        // bounded (ii) to (i): look for a completely semisimple quotient
        let ii_ok = out
            .iter()
            .filter(|v| v.condition.starts_with("Theorem-8.1-ii") || v.condition.starts_with("M_"))
            .all(|v| v.holds);
        if ii_ok {
            match search::find_quotient_semigroup(s, pair, budget) {
                Ok(Some(e)) => {
                    let css = check_completely_semisimple(e.q())?.holds;
                    out.push(if css {
                        Verdict::pass(
                            "Theorem-8.1-ii-to-i",
                            "completely semisimple quotient candidate found",
                        )
                    } else {
                        Verdict::fail(
                            "Theorem-8.1-ii-to-i",
                            vec![e.q().order()],
                            "first quotient inducing the pair is not completely semisimple",
                        )
                    });
                }
                Ok(None) => out.push(Verdict::pass(
                    "Theorem-8.1-ii-to-i",
                    "bounded-consistent: no quotient within budget",
                )),
                Err(SgError::Exhausted(msg)) => out.push(Verdict::pass(
                    "Theorem-8.1-ii-to-i",
                    format!("bounded-consistent: search exhausted ({msg})"),
                )),
                Err(err) => return Err(err),
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::fixtures::*;
    use crate::starpair::green_pair;

    #[test]
    fn groups_are_straight_left_orders_in_themselves() {
        for g in [trivial(), z2(), z4(), klein()] {
            let r = check_left_order(&Embedding::full(&g)).unwrap();
            assert!(r.is_straight && r.is_fully_stratified && r.is_stratified, "{r:?}");
            assert!(r.failures.is_empty());
        }
    }

    #[test]
    fn b2_is_a_straight_left_order_in_itself() {
        let r = check_left_order(&Embedding::full(&b2())).unwrap();
        assert!(r.is_straight);
        assert_eq!(r.witnesses.len(), 5);
        for &w in &r.witnesses {
            assert!(replay_order_witness(&b2(), w).unwrap());
        }
    }

    #[test]
    fn singleton_inside_z2_is_not_a_left_order() {
        let e = Embedding::new(z2(), &[0]).unwrap();
        let r = check_left_order(&e).unwrap();
        assert!(!r.is_weak_left_order);
        assert_eq!(r.failures, vec![OrderFailure::Unrepresentable { q: 1 }]);
    }

    #[test]
    fn zero_lemmas_on_fixtures() {
        for s in [z4(), b2()] {
            let verdicts = check_zero_lemmas(&Embedding::full(&s)).unwrap();
            assert!(verdicts.iter().all(|v| v.holds), "{verdicts:?}");
        }
        let e = Embedding::new(z2(), &[0]).unwrap();
        assert!(matches!(
            check_zero_lemmas(&e),
            Err(SgError::HypothesisNotMet(_))
        ));
    }

    #[test]
    fn abundance_examples() {
        assert!(check_abundant(&b2()).unwrap().holds);
        assert!(check_abundant(&z4()).unwrap().holds);
        let v = check_abundant(&null2()).unwrap();
        assert!(!v.holds);
    }

    #[test]
    fn ic_examples() {
        assert!(check_ic(&z4()).unwrap().holds);
        assert!(check_ic(&b2()).unwrap().holds);
        assert!(check_ic(&semilattice2()).unwrap().holds);
        assert!(matches!(check_ic(&null2()), Err(SgError::NotAbundant)));
    }

    #[test]
    fn principal_factor_shapes() {
        assert_eq!(principal_factors(&z4()).unwrap().len(), 1);
        let b = principal_factors(&b2()).unwrap();
        let mut orders: Vec<usize> = b.iter().map(|f| f.quotient.order()).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 5]);
        let sl = principal_factors(&semilattice2()).unwrap();
        let mut orders: Vec<usize> = sl.iter().map(|f| f.quotient.order()).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2]);
    }

    #[test]
    fn complete_simplicity_examples() {
        assert!(check_completely_0_simple(&b2()).unwrap().holds);
        for g in [trivial(), z2(), z4(), klein()] {
            assert!(check_completely_0_simple(&g).unwrap().holds);
        }
        // the two-element semilattice is the smallest Rees matrix
        // semigroup over the trivial group, hence completely 0-simple
        assert!(check_completely_0_simple(&semilattice2()).unwrap().holds);
        assert!(!check_completely_0_simple(&clifford4()).unwrap().holds);
        assert!(!check_completely_0_simple(&null2()).unwrap().holds);
    }

    #[test]
    fn complete_semisimplicity_examples() {
        for s in [b2(), z4(), semilattice2(), left_zero2(), clifford4()] {
            assert!(check_completely_semisimple(&s).unwrap().holds, "{s:?}");
        }
        assert!(!check_completely_semisimple(&null2()).unwrap().holds);
    }

    #[test]
    fn chain_conditions_are_informational() {
        let pair = green_pair(&b2()).unwrap();
        let der = derive(&pair).unwrap();
        let verdicts = check_chain_conditions(&pair, &der.dp).unwrap();
        assert_eq!(verdicts.len(), 2);
        assert!(verdicts.iter().all(|v| v.holds));
        assert!(verdicts[0].note.contains("depth 1"));
    }

    #[test]
    fn slicing_harness_on_b2_and_groups() {
        let b = b2();
        let e = Embedding::full(&b);
        let dq = j_decomposition(&b).unwrap();
        let verdicts = harness_slicing(&e, &dq).unwrap();
        assert!(verdicts.iter().all(|v| v.holds), "{verdicts:?}");

        let g = z4();
        let verdicts =
            harness_slicing(&Embedding::full(&g), &Decomposition::trivial(&g)).unwrap();
        assert!(verdicts.iter().all(|v| v.holds), "{verdicts:?}");
    }

    #[test]
    fn semilattice_harness_on_clifford() {
        let s = clifford4();
        let d = j_decomposition(&s).unwrap();
        let targets: Vec<SemilatticeTarget> = (0..d.poset().size())
            .map(|alpha| SemilatticeTarget::identity(&d, alpha).unwrap())
            .collect();
        let budget = SearchBudget::free().with_max_order(4);
        let verdicts = harness_semilattice(&s, &d, &targets, &budget).unwrap();
        assert!(verdicts.iter().all(|v| v.holds), "{verdicts:?}");
        assert!(verdicts
            .iter()
            .any(|v| v.condition == "Theorem-6.1-B" && v.note.contains("quotient found")));
    }

    #[test]
    fn semilattice_harness_reduces_to_group_case() {
        let g = z2();
        let d = Decomposition::trivial(&g);
        let targets = vec![SemilatticeTarget::identity(&d, 0).unwrap()];
        let budget = SearchBudget::free().with_max_order(2);
        let verdicts = harness_semilattice(&g, &d, &targets, &budget).unwrap();
        assert!(verdicts.iter().all(|v| v.holds), "{verdicts:?}");
    }

    #[test]
    fn fully_stratified_harness_on_b2() {
        let b = b2();
        let d = decomp::jstar_decomposition(&b).unwrap();
        let e = Embedding::full(&b);
        let dq = j_decomposition(&b).unwrap();
        let budget = SearchBudget::free().with_max_order(5).with_max_tables(2_000_000);
        let verdicts = harness_fully_stratified(&b, &d, Some((&e, &dq)), &budget).unwrap();
        assert!(verdicts.iter().all(|v| v.holds), "{verdicts:?}");
    }

    #[test]
    fn fully_stratified_harness_on_groups() {
        let g = z2();
        let d = Decomposition::trivial(&g);
        let budget = SearchBudget::free().with_max_order(2);
        let verdicts = harness_fully_stratified(&g, &d, None, &budget).unwrap();
        assert!(verdicts.iter().all(|v| v.holds), "{verdicts:?}");
    }

    #[test]
    fn semisimple_harness_on_fixtures() {
        let b = b2();
        let pair = green_pair(&b).unwrap();
        let e = Embedding::full(&b);
        let budget = SearchBudget::free().with_max_order(5).with_max_tables(500_000);
        let verdicts = harness_semisimple(&b, &pair, Some(&e), &budget).unwrap();
        assert!(verdicts.iter().all(|v| v.holds), "{verdicts:?}");

        let g = z2();
        let verdicts = harness_semisimple(
            &g,
            &green_pair(&g).unwrap(),
            Some(&Embedding::full(&g)),
            &SearchBudget::free().with_max_order(3),
        )
        .unwrap();
        assert!(verdicts.iter().all(|v| v.holds), "{verdicts:?}");

        let sl = semilattice2();
        let verdicts = harness_semisimple(
            &sl,
            &green_pair(&sl).unwrap(),
            Some(&Embedding::full(&sl)),
            &SearchBudget::free().with_max_order(3),
        )
        .unwrap();
        assert!(verdicts.iter().all(|v| v.holds), "{verdicts:?}");
    }
}
