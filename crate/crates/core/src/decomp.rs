use crate::error::{Result, SgError};
use crate::green;
use crate::relation::Relation;
use crate::semigroup::{rees_quotient, FiniteSemigroup, ReesQuotient, SubsetHandle};
use crate::starpair::Verdict;
use serde::{Deserialize, Serialize};

/// A finite poset: reflexive, transitive, antisymmetric `leq`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    size: usize,
    leq: Relation,
}

impl Poset {
    pub fn new(leq: Relation) -> Result<Poset> {
        let leq = leq.into_preorder()?;
        if !leq.is_antisymmetric() {
            let n = leq.universe();
            let (i, j) = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .find(|&(i, j)| i != j && leq.get(i, j) && leq.get(j, i))
                .unwrap();
            return Err(SgError::NotKind {
                expected: "partial order",
                check: "antisymmetry",
                i,
                j,
            });
        }
        Ok(Poset {
            size: leq.universe(),
            leq,
        })
    }

    pub fn chain(size: usize) -> Poset {
        Poset::new(Relation::from_fn(size, |i, j| i <= j)).unwrap()
    }

    pub fn point() -> Poset {
        Poset::chain(1)
    }

    pub fn antichain(size: usize) -> Poset {
        Poset::new(Relation::identity(size)).unwrap()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq.get(a, b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq.get(a, b)
    }

    pub fn relation(&self) -> &Relation {
        &self.leq
    }

    /// Greatest lower bound, when it exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.size)
            .filter(|&g| self.leq(g, a) && self.leq(g, b))
            .collect();
        lower
            .iter()
            .copied()
            .find(|&g| lower.iter().all(|&d| self.leq(d, g)))
    }

    pub fn is_meet_semilattice(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).all(|b| self.meet(a, b).is_some()))
    }
}

/// A partition of a semigroup indexed by a poset, with products falling
/// into classes below both factors.
#[derive(Debug, Clone)]
pub struct Decomposition {
    base: FiniteSemigroup,
    poset: Poset,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl Decomposition {
    pub fn base(&self) -> &FiniteSemigroup {
        &self.base
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn trivial(s: &FiniteSemigroup) -> Decomposition {
        Decomposition {
            base: s.clone(),
            poset: Poset::point(),
            class_of: vec![0; s.order()],
            classes: vec![s.elements().collect()],
        }
    }
}

/// Build a decomposition from explicit classes and a poset, verifying
/// multiplicative compatibility.
pub fn from_partition(
    s: &FiniteSemigroup,
    classes: Vec<Vec<usize>>,
    poset: Poset,
) -> Result<Decomposition> {
    assert_eq!(classes.len(), poset.size(), "one class per poset element");
    let n = s.order();
    let mut class_of = vec![usize::MAX; n];
    for (alpha, class) in classes.iter().enumerate() {
        if class.is_empty() {
            return Err(SgError::EmptyClass(alpha));
        }
        for &x in class {
            if x >= n || class_of[x] != usize::MAX {
                return Err(SgError::NotAPartition(x));
            }
            class_of[x] = alpha;
        }
    }
    if let Some(x) = (0..n).find(|&x| class_of[x] == usize::MAX) {
        return Err(SgError::NotAPartition(x));
    }
    for a in 0..n {
        for b in 0..n {
            let p = s.mul(a, b);
            let gamma = class_of[p];
            if !poset.leq(gamma, class_of[a]) || !poset.leq(gamma, class_of[b]) {
                return Err(SgError::Incompatible { a, b, product: p });
            }
        }
    }
    let mut classes = classes;
    for c in &mut classes {
        c.sort_unstable();
    }
    Ok(Decomposition {
        base: s.clone(),
        poset,
        class_of,
        classes,
    })
}

/// Decompose by a preorder satisfying ab <= a and ab <= b; classes are
/// the associated equivalence classes, canonically ordered by least
/// base element.
pub fn from_preorder(s: &FiniteSemigroup, pre: &Relation) -> Result<Decomposition> {
    let pre = pre.clone().into_preorder()?;
    let n = s.order();
    for a in 0..n {
        for b in 0..n {
            let p = s.mul(a, b);
            if !pre.get(p, a) || !pre.get(p, b) {
                return Err(SgError::NotCompatiblePreorder { a, b });
            }
        }
    }
    let eq = pre.symmetrize()?;
    let classes = eq.classes();
    let leq = Relation::from_fn(classes.len(), |i, j| pre.get(classes[i][0], classes[j][0]));
    let poset = Poset::new(leq)?;
    from_partition(s, classes, poset)
}

/// The J-class decomposition.
pub fn j_decomposition(s: &FiniteSemigroup) -> Result<Decomposition> {
    from_preorder(s, &green::green_preorders(s).leq_j)
}

/// The J*-class decomposition.
pub fn jstar_decomposition(s: &FiniteSemigroup) -> Result<Decomposition> {
    from_preorder(s, &green::jstar_preorder(s)?)
}

/// One layer of a decomposition: the ideals below a poset index and the
/// Rees quotient slice they bound.
#[derive(Debug, Clone)]
pub struct Slice {
    pub alpha: usize,
    /// I^S_alpha, as a subset of the base.
    pub lower_ideal: SubsetHandle,
    /// J^S_alpha, as a subset of the base.
    pub closed_ideal: SubsetHandle,
    /// J^S_alpha / I^S_alpha; its source is the semigroup on J^S_alpha
    /// renumbered in sorted order.
    pub quotient: ReesQuotient,
    /// sorted members of J^S_alpha, indexing the quotient's source.
    j_members: Vec<usize>,
}

impl Slice {
    /// Map a base element into the slice quotient, if it lies in J^S_alpha.
    pub fn project(&self, x: usize) -> Option<usize> {
        let pos = self.j_members.binary_search(&x).ok()?;
        Some(self.quotient.projection[pos])
    }

    /// Base elements of S_alpha paired with their quotient indices.
    pub fn class_images(&self, d: &Decomposition) -> Vec<(usize, usize)> {
        d.classes()[self.alpha]
            .iter()
            .map(|&x| (x, self.project(x).expect("class inside J")))
            .collect()
    }
}

pub fn slices(d: &Decomposition) -> Result<Vec<Slice>> {
    let s = d.base();
    let mut out = Vec::with_capacity(d.poset().size());
    for alpha in 0..d.poset().size() {
        let mut lower: Vec<usize> = Vec::new();
        let mut closed: Vec<usize> = Vec::new();
        for (beta, class) in d.classes().iter().enumerate() {
            if d.poset().lt(beta, alpha) {
                lower.extend(class.iter().copied());
            }
            if d.poset().leq(beta, alpha) {
                closed.extend(class.iter().copied());
            }
        }
        lower.sort_unstable();
        closed.sort_unstable();
        let wrap = |e: SgError| {
            SgError::InternalInconsistency(format!(
                "decomposition compatibility should force ideals at {alpha}: {e}"
            ))
        };
        let lower_ideal = if lower.is_empty() {
            SubsetHandle::raw(s, &[])?
        } else {
            SubsetHandle::ideal(s, &lower).map_err(wrap)?
        };
        let closed_ideal = SubsetHandle::ideal(s, &closed).map_err(wrap)?;
        let j_semigroup = s.restrict(&closed).map_err(wrap)?;
        let lower_inside: Vec<usize> = lower
            .iter()
            .map(|&x| closed.binary_search(&x).unwrap())
            .collect();
        let inner_ideal = if lower_inside.is_empty() {
            SubsetHandle::raw(&j_semigroup, &[])?
        } else {
            SubsetHandle::ideal(&j_semigroup, &lower_inside).map_err(wrap)?
        };
        let quotient = rees_quotient(&j_semigroup, &inner_ideal)?;
        out.push(Slice {
            alpha,
            lower_ideal,
            closed_ideal,
            quotient,
            j_members: closed,
        });
    }
    Ok(out)
}

/// Are I^S_alpha and J^S_alpha *-ideals of the base?
pub fn star_ideal_check(d: &Decomposition, alpha: usize) -> Result<Verdict> {
    let stars = green::starred_equivalences(d.base())?;
    let n = d.base().order();
    let slice = &slices(d)?[alpha];
    for (ideal, name) in [(&slice.lower_ideal, "I"), (&slice.closed_ideal, "J")] {
        for &a in ideal.members() {
            for b in 0..n {
                if (stars.lstar.get(a, b) || stars.rstar.get(a, b)) && !ideal.contains(b) {
                    return Ok(Verdict::fail(
                        "star-ideal",
                        vec![alpha, a, b],
                        format!("{name}^S_{alpha} is not closed under a starred class at (a, b)"),
                    ));
                }
            }
        }
    }
    Ok(Verdict::pass(
        "star-ideal",
        format!("I^S_{alpha} and J^S_{alpha} are *-ideals"),
    ))
}

/// Is the decomposition a semilattice of subsemigroups with
/// S_a S_b inside S_(a meet b)?
pub fn semilattice_form(d: &Decomposition) -> Result<Verdict> {
    if !d.poset().is_meet_semilattice() {
        return Ok(Verdict::fail(
            "semilattice-form",
            vec![],
            "index poset is not a meet-semilattice",
        ));
    }
    let s = d.base();
    for (alpha, class) in d.classes().iter().enumerate() {
        for &a in class {
            for &b in class {
                if d.class_of(s.mul(a, b)) != alpha {
                    return Ok(Verdict::fail(
                        "semilattice-form",
                        vec![alpha, a, b],
                        "class is not a subsemigroup",
                    ));
                }
            }
        }
    }
    for a in s.elements() {
        for b in s.elements() {
            let meet = d
                .poset()
                .meet(d.class_of(a), d.class_of(b))
                .expect("meet exists");
            if d.class_of(s.mul(a, b)) != meet {
                return Ok(Verdict::fail(
                    "semilattice-form",
                    vec![a, b],
                    "product lands outside the meet class",
                ));
            }
        }
    }
    Ok(Verdict::pass(
        "semilattice-form",
        "semilattice of subsemigroups",
    ))
}

/// A declared oversemigroup for one slice: the slice quotient embeds in
/// `w` via `embed` (quotient index -> w index).
#[derive(Debug, Clone)]
pub struct SliceOversemigroup {
    pub w: FiniteSemigroup,
    pub embed: Vec<usize>,
}

impl SliceOversemigroup {
    /// A slice regarded as sitting inside itself.
    pub fn identity(slice: &Slice) -> SliceOversemigroup {
        SliceOversemigroup {
            w: slice.quotient.quotient.clone(),
            embed: (0..slice.quotient.quotient.order()).collect(),
        }
    }
}

/// The layered preorders of Definition 5.1 plus the per-instance checks
/// of the two lemmas that govern them.
#[derive(Debug, Clone)]
pub struct LayeredPreorders {
    pub leq_l: Relation,
    pub leq_r: Relation,
    pub lemma_restriction: Verdict,
    pub lemma_symmetrization: Verdict,
}

/// Compute the layered relations: a <=l b iff a and cb lie in one class
/// S_alpha with a L'_alpha cb for some c in S, where L'_alpha is Green's
/// L of W_alpha restricted to the slice; dually for <=r.
pub fn layered_preorders(
    s: &FiniteSemigroup,
    d: &Decomposition,
    slice_orders: &[SliceOversemigroup],
) -> Result<LayeredPreorders> {
    let n = s.order();
    let slice_list = slices(d)?;
    assert_eq!(slice_orders.len(), slice_list.len(), "one oversemigroup per slice");

    // For each alpha: Green preorders of W_alpha, pulled back to base elements.
    let mut w_leq_l: Vec<Relation> = Vec::new();
    let mut w_leq_r: Vec<Relation> = Vec::new();
    for (alpha, (slice, over)) in slice_list.iter().zip(slice_orders).enumerate() {
        let q = &slice.quotient.quotient;
        if over.embed.len() != q.order() {
            return Err(SgError::SliceMismatch(alpha));
        }
        for a in q.elements() {
            if over.embed[a] >= over.w.order() {
                return Err(SgError::SliceMismatch(alpha));
            }
            for b in q.elements() {
                if over.embed[q.mul(a, b)] != over.w.mul(over.embed[a], over.embed[b]) {
                    return Err(SgError::SliceMismatch(alpha));
                }
            }
        }
        let pre = green::green_preorders(&over.w);
        w_leq_l.push(pre.leq_l);
        w_leq_r.push(pre.leq_r);
    }

    // Base element -> (class, image in W_class).
    let image = |x: usize| -> (usize, usize) {
        let alpha = d.class_of(x);
        let q_idx = slice_list[alpha].project(x).expect("class inside J");
        (alpha, slice_orders[alpha].embed[q_idx])
    };

    let leq_l = Relation::from_fn(n, |a, b| {
        let (alpha, ia) = image(a);
        (0..n).any(|c| {
            let cb = s.mul(c, b);
            d.class_of(cb) == alpha && {
                let (_, icb) = image(cb);
                w_leq_l[alpha].get(ia, icb) && w_leq_l[alpha].get(icb, ia)
            }
        })
    });
    let leq_r = Relation::from_fn(n, |a, b| {
        let (alpha, ia) = image(a);
        (0..n).any(|c| {
            let bc = s.mul(b, c);
            d.class_of(bc) == alpha && {
                let (_, ibc) = image(bc);
                w_leq_r[alpha].get(ia, ibc) && w_leq_r[alpha].get(ibc, ia)
            }
        })
    });

    // Restriction law: within one class, <=l coincides with the
    // restriction of <=_L in W_alpha (and dually).
    let mut lemma_restriction = Verdict::pass(
        "layered-restriction",
        "within each class the layered preorders restrict to the slice preorders",
    );
    'restr: for a in 0..n {
        for b in 0..n {
            if d.class_of(a) != d.class_of(b) {
                continue;
            }
            let (alpha, ia) = image(a);
            let (_, ib) = image(b);
            if leq_l.get(a, b) != w_leq_l[alpha].get(ia, ib)
                || leq_r.get(a, b) != w_leq_r[alpha].get(ia, ib)
            {
                lemma_restriction = Verdict::fail(
                    "layered-restriction",
                    vec![a, b],
                    "layered relation disagrees with the slice relation",
                );
                break 'restr;
            }
        }
    }

    // Symmetrization law: a <=l b <=l a iff same class and a L'_alpha b.
    let mut lemma_symmetrization = Verdict::pass(
        "layered-symmetrization",
        "mutual <=l (<=r) is exactly same-class slice equivalence",
    );
    'symm: for a in 0..n {
        for b in 0..n {
            let (alpha, ia) = image(a);
            let (beta, ib) = image(b);
            let same_l = alpha == beta
                && w_leq_l[alpha].get(ia, ib)
                && w_leq_l[alpha].get(ib, ia);
            if (leq_l.get(a, b) && leq_l.get(b, a)) != same_l {
                lemma_symmetrization = Verdict::fail(
                    "layered-symmetrization",
                    vec![a, b],
                    "mutual <=l disagrees with slice L'-equivalence",
                );
                break 'symm;
            }
            let same_r = alpha == beta
                && w_leq_r[alpha].get(ia, ib)
                && w_leq_r[alpha].get(ib, ia);
            if (leq_r.get(a, b) && leq_r.get(b, a)) != same_r {
                lemma_symmetrization = Verdict::fail(
                    "layered-symmetrization",
                    vec![a, b],
                    "mutual <=r disagrees with slice R'-equivalence",
                );
                break 'symm;
            }
        }
    }

    Ok(LayeredPreorders {
        leq_l,
        leq_r,
        lemma_restriction,
        lemma_symmetrization,
    })
}

/// On-disk form of a decomposition.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecompositionFile {
    pub poset: PosetFile,
    pub classes: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetFile {
    pub size: usize,
    pub leq: Vec<String>,
}

impl DecompositionFile {
    pub fn from_decomposition(d: &Decomposition) -> DecompositionFile {
        let size = d.poset().size();
        let leq = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| if d.poset().leq(i, j) { '1' } else { '0' })
                    .collect()
            })
            .collect();
        DecompositionFile {
            poset: PosetFile { size, leq },
            classes: d.classes().to_vec(),
        }
    }

    pub fn into_decomposition(self, s: &FiniteSemigroup) -> Result<Decomposition> {
        if self.poset.leq.len() != self.poset.size {
            return Err(SgError::Parse {
                line: 0,
                msg: "poset leq row count does not match size".into(),
            });
        }
        let mut leq = Relation::new_raw(self.poset.size);
        for (i, row) in self.poset.leq.iter().enumerate() {
            if row.len() != self.poset.size {
                return Err(SgError::Parse {
                    line: i + 1,
                    msg: "poset leq row width does not match size".into(),
                });
            }
            for (j, c) in row.chars().enumerate() {
                leq.set(i, j, c == '1');
            }
        }
        from_partition(s, self.classes, Poset::new(leq)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::fixtures::*;

    #[test]
    fn trivial_and_chain_examples() {
        for s in [b2(), z4(), null2()] {
            let d = Decomposition::trivial(&s);
            assert_eq!(d.classes().len(), 1);
            let sl = slices(&d).unwrap();
            assert_eq!(sl.len(), 1);
            assert!(sl[0].lower_ideal.is_empty());
            assert_eq!(sl[0].quotient.quotient.order(), s.order());
        }
        let s = semilattice2();
        let d = from_partition(&s, vec![vec![0], vec![1]], Poset::chain(2)).unwrap();
        let sl = slices(&d).unwrap();
        assert_eq!(sl[1].lower_ideal.members(), &[0]);
        assert_eq!(sl[1].quotient.quotient.order(), 2);
    }

    #[test]
    fn antichain_split_of_z2_is_incompatible() {
        let err = from_partition(&z2(), vec![vec![0], vec![1]], Poset::antichain(2));
        assert!(matches!(err, Err(SgError::Incompatible { .. })));
    }

    #[test]
    fn partition_errors() {
        let s = z2();
        assert!(matches!(
            from_partition(&s, vec![vec![0, 1], vec![]], Poset::chain(2)),
            Err(SgError::EmptyClass(1))
        ));
        assert!(matches!(
            from_partition(&s, vec![vec![0], vec![0, 1]], Poset::chain(2)),
            Err(SgError::NotAPartition(0))
        ));
    }

    #[test]
    fn j_decomposition_matches_j_classes() {
        for s in [b2(), z4(), semilattice2(), clifford4(), null2()] {
            let d = j_decomposition(&s).unwrap();
            let eq = green::green_equivalences(&s).unwrap();
            assert_eq!(d.classes(), eq.j.classes().as_slice());
        }
    }

    #[test]
    fn universal_preorder_gives_one_class() {
        let d = from_preorder(&z4(), &Relation::universal(4)).unwrap();
        assert_eq!(d.classes().len(), 1);
    }

    #[test]
    fn b2_slices() {
        let b = b2();
        let d = j_decomposition(&b).unwrap();
        let sl = slices(&d).unwrap();
        assert_eq!(sl.len(), 2);
        // top class {0,1,2,3}: quotient is B2/{0}, order 5 again
        let top = sl.iter().find(|x| x.alpha == 0).unwrap();
        assert_eq!(top.lower_ideal.members(), &[4]);
        assert_eq!(top.quotient.quotient.order(), 5);
        // bottom class {4}: no strict predecessors, slice is the class itself
        let bottom = sl.iter().find(|x| x.alpha == 1).unwrap();
        assert!(bottom.lower_ideal.is_empty());
        assert_eq!(bottom.quotient.quotient.order(), 1);
    }

    #[test]
    fn star_ideal_checks() {
        let b = b2();
        let d = j_decomposition(&b).unwrap();
        for alpha in 0..2 {
            assert!(star_ideal_check(&d, alpha).unwrap().holds);
        }
        for s in [null2(), left_zero2(), clifford4()] {
            let d = jstar_decomposition(&s).unwrap();
            for alpha in 0..d.poset().size() {
                assert!(star_ideal_check(&d, alpha).unwrap().holds, "{s:?} {alpha}");
            }
            let t = Decomposition::trivial(&s);
            assert!(star_ideal_check(&t, 0).unwrap().holds);
        }
    }

    #[test]
    fn semilattice_form_examples() {
        let d = j_decomposition(&clifford4()).unwrap();
        assert!(semilattice_form(&d).unwrap().holds);
        let d = j_decomposition(&b2()).unwrap();
        let v = semilattice_form(&d).unwrap();
        assert!(!v.holds, "B2's top J-class is not a subsemigroup");
        let s = subsemigroup_fixture();
        let t = Decomposition::trivial(&s);
        assert!(semilattice_form(&t).unwrap().holds);
    }

    fn subsemigroup_fixture() -> FiniteSemigroup {
        z4()
    }

    #[test]
    fn slice_quotients_validate() {
        for s in [b2(), clifford4(), semilattice2(), null2()] {
            let d = j_decomposition(&s).unwrap();
            for slice in slices(&d).unwrap() {
                let q = &slice.quotient.quotient;
                FiniteSemigroup::validate(q.order(), q.table().to_vec()).unwrap();
            }
        }
    }

    #[test]
    fn layered_one_class_recovers_induced_pair() {
        let b = b2();
        let d = Decomposition::trivial(&b);
        let sl = slices(&d).unwrap();
        let over = vec![SliceOversemigroup::identity(&sl[0])];
        let lay = layered_preorders(&b, &d, &over).unwrap();
        let pre = green::green_preorders(&b);
        assert!(lay.leq_l.same_pairs(&pre.leq_l));
        assert!(lay.leq_r.same_pairs(&pre.leq_r));
        assert!(lay.lemma_restriction.holds);
        assert!(lay.lemma_symmetrization.holds);
    }

    #[test]
    fn layered_clifford_orders_by_class() {
        let s = clifford4();
        let d = j_decomposition(&s).unwrap();
        let sl = slices(&d).unwrap();
        let over: Vec<SliceOversemigroup> =
            sl.iter().map(SliceOversemigroup::identity).collect();
        let lay = layered_preorders(&s, &d, &over).unwrap();
        for a in s.elements() {
            for b in s.elements() {
                let expect = d.poset().leq(d.class_of(a), d.class_of(b));
                assert_eq!(lay.leq_l.get(a, b), expect, "leq_l at ({a}, {b})");
                assert_eq!(lay.leq_r.get(a, b), expect, "leq_r at ({a}, {b})");
            }
        }
        assert!(lay.lemma_restriction.holds);
        assert!(lay.lemma_symmetrization.holds);
    }

    #[test]
    fn decomposition_file_round_trip() {
        let b = b2();
        let d = j_decomposition(&b).unwrap();
        let file = DecompositionFile::from_decomposition(&d);
        let json = serde_json::to_string(&file).unwrap();
        let back: DecompositionFile = serde_json::from_str(&json).unwrap();
        let d2 = back.into_decomposition(&b).unwrap();
        assert_eq!(d2.classes(), d.classes());
    }
}
