use crate::error::{Result, SgError};
use crate::relation::Relation;
use crate::semigroup::{FiniteSemigroup, SubsetHandle};
use serde::{Deserialize, Serialize};

/// Multiplication in S^1, with `s.order()` standing for the adjoined identity.
#[inline]
pub fn mul1(s: &FiniteSemigroup, a: usize, b: usize) -> usize {
    let n = s.order();
    if a == n {
        b
    } else if b == n {
        a
    } else {
        s.mul(a, b)
    }
}

pub struct GreenPreorders {
    pub leq_l: Relation,
    pub leq_r: Relation,
    pub leq_j: Relation,
}

pub struct GreenEquivalences {
    pub l: Relation,
    pub r: Relation,
    pub h: Relation,
    pub d: Relation,
    pub j: Relation,
}

pub struct StarredPreorders {
    pub leq_lstar: Relation,
    pub leq_rstar: Relation,
}

pub struct StarredEquivalences {
    pub lstar: Relation,
    pub rstar: Relation,
    pub hstar: Relation,
    pub dstar: Relation,
}

/// The preorders a <=_L b iff S^1 a is contained in S^1 b, and friends.
pub fn green_preorders(s: &FiniteSemigroup) -> GreenPreorders {
    let n = s.order();
    // a <=_L b iff a is in S^1 b, and dually; a <=_J b iff a is in S^1 b S^1.
    let leq_l = Relation::from_fn(n, |a, b| a == b || (0..n).any(|x| s.mul(x, b) == a));
    let leq_r = Relation::from_fn(n, |a, b| a == b || (0..n).any(|x| s.mul(b, x) == a));
    let leq_j = Relation::from_fn(n, |a, b| {
        (0..=n).any(|x| (0..=n).any(|y| mul1(s, mul1(s, x, b), y) == a))
    });
    GreenPreorders {
        leq_l: leq_l.into_preorder().expect("<=_L is a preorder"),
        leq_r: leq_r.into_preorder().expect("<=_R is a preorder"),
        leq_j: leq_j.into_preorder().expect("<=_J is a preorder"),
    }
}

/// Green's equivalences; errors only on an internal L∘R != R∘L discrepancy.
pub fn green_equivalences(s: &FiniteSemigroup) -> Result<GreenEquivalences> {
    let pre = green_preorders(s);
    let l = pre.leq_l.symmetrize()?;
    let r = pre.leq_r.symmetrize()?;
    let j = pre.leq_j.symmetrize()?;
    let h = l.intersect(&r).into_equivalence()?;
    let lr = l.compose(&r);
    let rl = r.compose(&l);
    if !lr.same_pairs(&rl) {
        return Err(SgError::InternalInconsistency(
            "L∘R != R∘L in a Green's relations computation".into(),
        ));
    }
    let d = lr.into_equivalence()?;
    Ok(GreenEquivalences { l, r, h, d, j })
}

/// a <=_L* b iff every equality bx = by with x, y in S^1 forces ax = ay,
/// and dually for <=_R*.
pub fn starred_preorders(s: &FiniteSemigroup) -> StarredPreorders {
    let n = s.order();
    let leq_lstar = Relation::from_fn(n, |a, b| {
        (0..=n).all(|x| {
            (0..=n).all(|y| mul1(s, b, x) != mul1(s, b, y) || mul1(s, a, x) == mul1(s, a, y))
        })
    });
    let leq_rstar = Relation::from_fn(n, |a, b| {
        (0..=n).all(|x| {
            (0..=n).all(|y| mul1(s, x, b) != mul1(s, y, b) || mul1(s, x, a) == mul1(s, y, a))
        })
    });
    StarredPreorders {
        leq_lstar: leq_lstar.into_preorder().expect("<=_L* is a preorder"),
        leq_rstar: leq_rstar.into_preorder().expect("<=_R* is a preorder"),
    }
}

pub fn starred_equivalences(s: &FiniteSemigroup) -> Result<StarredEquivalences> {
    let pre = starred_preorders(s);
    let lstar = pre.leq_lstar.symmetrize()?;
    let rstar = pre.leq_rstar.symmetrize()?;
    let hstar = lstar.intersect(&rstar).into_equivalence()?;
    let dstar = lstar.equivalence_join(&rstar);
    Ok(StarredEquivalences {
        lstar,
        rstar,
        hstar,
        dstar,
    })
}

/// Smallest *-ideal containing `seed`: simultaneously a two-sided ideal
/// and a union of L*-classes and of R*-classes.
pub fn star_ideal_closure(s: &FiniteSemigroup, seed: &[usize]) -> Result<SubsetHandle> {
    if seed.is_empty() {
        return Err(SgError::EmptySeed);
    }
    let stars = starred_equivalences(s)?;
    star_ideal_closure_with(s, seed, &stars)
}

pub fn star_ideal_closure_with(
    s: &FiniteSemigroup,
    seed: &[usize],
    stars: &StarredEquivalences,
) -> Result<SubsetHandle> {
    let n = s.order();
    let mut in_set = vec![false; n];
    for &x in seed {
        if x >= n {
            return Err(SgError::IndexOutOfRange {
                row: 0,
                col: 0,
                value: x,
                order: n,
            });
        }
        in_set[x] = true;
    }
    loop {
        let mut changed = false;
        for a in 0..n {
            if !in_set[a] {
                continue;
            }
            for x in 0..n {
                for p in [s.mul(x, a), s.mul(a, x)] {
                    if !in_set[p] {
                        in_set[p] = true;
                        changed = true;
                    }
                }
            }
            for b in 0..n {
                if !in_set[b] && (stars.lstar.get(a, b) || stars.rstar.get(a, b)) {
                    in_set[b] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let members: Vec<usize> = (0..n).filter(|&x| in_set[x]).collect();
    SubsetHandle::ideal(s, &members)
}

/// a <=_J* b iff J*(a) is contained in J*(b).
pub fn jstar_preorder(s: &FiniteSemigroup) -> Result<Relation> {
    let n = s.order();
    let stars = starred_equivalences(s)?;
    let mut closures = Vec::with_capacity(n);
    for b in 0..n {
        closures.push(star_ideal_closure_with(s, &[b], &stars)?);
    }
    // containment of generated *-ideals reduces to membership
    Relation::from_fn(n, |a, b| closures[b].contains(a)).into_preorder()
}

/// The square cancellable elements S(S) = { a : a H* a^2 }.
pub fn square_cancellable(s: &FiniteSemigroup) -> Result<Vec<usize>> {
    let stars = starred_equivalences(s)?;
    Ok((0..s.order())
        .filter(|&a| stars.hstar.get(a, s.mul(a, a)))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupHClassInfo {
    pub element: usize,
    pub in_subgroup: bool,
    pub identity: Option<usize>,
    pub inverse: Option<usize>,
}

/// Decide whether the H-class of `a` is a group; if so return its
/// identity e and the inverse a# of a.
pub fn group_h_class(q: &FiniteSemigroup, a: usize) -> Result<GroupHClassInfo> {
    let greens = green_equivalences(q)?;
    group_h_class_with(q, a, &greens.h)
}

pub fn group_h_class_with(
    q: &FiniteSemigroup,
    a: usize,
    h: &Relation,
) -> Result<GroupHClassInfo> {
    let a2 = q.mul(a, a);
    let via_square = h.get(a, a2);
    let class = h.class_of(a);
    let via_idempotent = class.iter().any(|&e| q.mul(e, e) == e);
    if via_square != via_idempotent {
        return Err(SgError::InternalInconsistency(format!(
            "a H a^2 ({via_square}) disagrees with H-class idempotent test ({via_idempotent}) at {a}"
        )));
    }
    if !via_square {
        return Ok(GroupHClassInfo {
            element: a,
            in_subgroup: false,
            identity: None,
            inverse: None,
        });
    }
    // some power of a is idempotent; for a group H-class it lies in H_a
    let mut p = a;
    let e = loop {
        if q.mul(p, p) == p {
            break p;
        }
        p = q.mul(p, a);
    };
    if !h.get(e, a) || q.mul(e, a) != a || q.mul(a, e) != a {
        return Err(SgError::InternalInconsistency(format!(
            "idempotent power {e} is not the identity of H_{a}"
        )));
    }
    let inv = class
        .iter()
        .copied()
        .find(|&b| q.mul(a, b) == e && q.mul(b, a) == e)
        .ok_or_else(|| {
            SgError::InternalInconsistency(format!("no inverse of {a} in its group H-class"))
        })?;
    Ok(GroupHClassInfo {
        element: a,
        in_subgroup: true,
        identity: Some(e),
        inverse: Some(inv),
    })
}

/// Every element lies in a subgroup (a H a^2 for all a).
pub fn is_completely_regular(s: &FiniteSemigroup) -> Result<bool> {
    let greens = green_equivalences(s)?;
    Ok((0..s.order()).all(|a| greens.h.get(a, s.mul(a, a))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::Relation;
    use crate::semigroup::fixtures::*;

    #[test]
    fn group_preorders_universal() {
        for g in [z2(), z4(), klein()] {
            let pre = green_preorders(&g);
            let u = Relation::universal(g.order());
            assert!(pre.leq_l.same_pairs(&u));
            assert!(pre.leq_r.same_pairs(&u));
            assert!(pre.leq_j.same_pairs(&u));
            let spre = starred_preorders(&g);
            assert!(spre.leq_lstar.same_pairs(&u));
            assert!(spre.leq_rstar.same_pairs(&u));
        }
    }

    #[test]
    fn left_zero_preorders() {
        let s = left_zero2();
        let pre = green_preorders(&s);
        assert!(pre.leq_l.same_pairs(&Relation::universal(2)));
        assert!(pre.leq_r.same_pairs(&Relation::identity(2)));
    }

    #[test]
    fn semilattice_j_order() {
        let s = semilattice2();
        let pre = green_preorders(&s);
        assert!(pre.leq_j.get(0, 1));
        assert!(!pre.leq_j.get(1, 0));
        // commutative idempotent: all equivalences trivial
        let eq = green_equivalences(&s).unwrap();
        for rel in [&eq.l, &eq.r, &eq.h, &eq.d, &eq.j] {
            assert!(rel.same_pairs(&Relation::identity(2)));
        }
    }

    #[test]
    fn b2_green_classes() {
        let b = b2();
        let eq = green_equivalences(&b).unwrap();
        assert_eq!(eq.j.classes(), vec![vec![0, 1, 2, 3], vec![4]]);
        assert!(eq.h.same_pairs(&Relation::identity(5)));
        assert_eq!(eq.d.classes().len(), 2);
    }

    #[test]
    fn group_equivalences_single_class() {
        let eq = green_equivalences(&z4()).unwrap();
        for rel in [&eq.l, &eq.r, &eq.h, &eq.d, &eq.j] {
            assert!(rel.same_pairs(&Relation::universal(4)));
        }
    }

    #[test]
    fn starred_on_regular_b2_matches_green() {
        let b = b2();
        let pre = green_preorders(&b);
        let spre = starred_preorders(&b);
        assert!(spre.leq_lstar.same_pairs(&pre.leq_l));
        assert!(spre.leq_rstar.same_pairs(&pre.leq_r));
        let jstar = jstar_preorder(&b).unwrap();
        assert!(jstar.same_pairs(&pre.leq_j));
    }

    #[test]
    fn null_semigroup_starred_classes_are_singletons() {
        let s = null2();
        let stars = starred_equivalences(&s).unwrap();
        assert!(stars.lstar.same_pairs(&Relation::identity(2)));
        assert!(stars.rstar.same_pairs(&Relation::identity(2)));
    }

    #[test]
    fn starred_contains_green() {
        for s in [b2(), z4(), semilattice2(), null2(), left_zero2()] {
            let eq = green_equivalences(&s).unwrap();
            let stars = starred_equivalences(&s).unwrap();
            assert!(eq.l.is_subset_of(&stars.lstar));
            assert!(eq.r.is_subset_of(&stars.rstar));
            assert!(eq.h.is_subset_of(&stars.hstar));
        }
    }

    #[test]
    fn star_ideal_closure_examples() {
        let b = b2();
        assert_eq!(star_ideal_closure(&b, &[4]).unwrap().members(), &[4]);
        let g = z4();
        assert_eq!(star_ideal_closure(&g, &[1]).unwrap().members(), &[0, 1, 2, 3]);
        assert_eq!(
            star_ideal_closure(&b, &[0, 1, 2, 3, 4]).unwrap().members(),
            &[0, 1, 2, 3, 4]
        );
    }

    #[test]
    fn jstar_products_descend() {
        for s in [b2(), semilattice2(), null2(), right_zero2()] {
            let jstar = jstar_preorder(&s).unwrap();
            for a in s.elements() {
                for b in s.elements() {
                    let ab = s.mul(a, b);
                    assert!(jstar.get(ab, a));
                    assert!(jstar.get(ab, b));
                }
            }
        }
    }

    #[test]
    fn square_cancellable_examples() {
        assert_eq!(square_cancellable(&z4()).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(square_cancellable(&b2()).unwrap(), vec![0, 3, 4]);
        for s in [semilattice2(), left_zero2(), null2()] {
            let sc = square_cancellable(&s).unwrap();
            for e in s.idempotents() {
                assert!(sc.contains(&e));
            }
        }
    }

    #[test]
    fn group_h_class_examples() {
        let b = b2();
        let info = group_h_class(&b, 0).unwrap();
        assert!(info.in_subgroup);
        assert_eq!(info.identity, Some(0));
        assert_eq!(info.inverse, Some(0));
        // the nilpotent (1,2) squares to zero
        let info = group_h_class(&b, 1).unwrap();
        assert!(!info.in_subgroup);

        let info = group_h_class(&z4(), 1).unwrap();
        assert!(info.in_subgroup);
        assert_eq!(info.identity, Some(0));
        assert_eq!(info.inverse, Some(3));
    }

    #[test]
    fn congruence_properties() {
        for s in [b2(), semilattice2(), null2(), left_zero2(), clifford4()] {
            let eq = green_equivalences(&s).unwrap();
            let stars = starred_equivalences(&s).unwrap();
            for a in s.elements() {
                for b in s.elements() {
                    for c in s.elements() {
                        if eq.l.get(a, b) {
                            assert!(eq.l.get(s.mul(a, c), s.mul(b, c)));
                        }
                        if eq.r.get(a, b) {
                            assert!(eq.r.get(s.mul(c, a), s.mul(c, b)));
                        }
                        if stars.lstar.get(a, b) {
                            assert!(stars.lstar.get(s.mul(a, c), s.mul(b, c)));
                        }
                        if stars.rstar.get(a, b) {
                            assert!(stars.rstar.get(s.mul(c, a), s.mul(c, b)));
                        }
                    }
                }
            }
        }
    }
}
