use super::*;
use crate::error::Error;
use crate::exactla::Field;

const Q: Field = Field::Rational;

fn monomial(q: &Quiver, names: &[&str]) -> Relation {
    Relation::monomial(q.path_by_names(names).unwrap()).unwrap()
}

fn a2() -> AlgebraPresentation {
    let q = Quiver::from_names(&["1", "2"], &[("a", "1", "2")]).unwrap();
    AlgebraPresentation::path_algebra(Q, q).unwrap()
}

fn ex49a() -> AlgebraPresentation {
    let q = Quiver::from_names(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")]).unwrap();
    let r = monomial(&q, &["b", "a"]);
    AlgebraPresentation::build(Q, q, vec![r], None).unwrap()
}

fn ex49b() -> AlgebraPresentation {
    let q = Quiver::from_names(&["a", "b", "c"], &[("x", "a", "b"), ("y", "b", "c"), ("z", "c", "b")]).unwrap();
    let r = monomial(&q, &["y", "z"]);
    AlgebraPresentation::build(Q, q, vec![r], None).unwrap()
}

fn ex65a() -> AlgebraPresentation {
    let q = Quiver::from_names(
        &["1", "2", "3", "4"],
        &[("b1", "1", "2"), ("b2", "2", "3"), ("a", "1", "3"), ("d", "3", "4")],
    )
    .unwrap();
    let r = monomial(&q, &["d", "a"]);
    AlgebraPresentation::build(Q, q, vec![r], None).unwrap()
}

/// Commutative square 1 -> 2 -> 4, 1 -> 3 -> 4 with `ba = dc`.
fn commutative_square() -> AlgebraPresentation {
    let q = Quiver::from_names(
        &["1", "2", "3", "4"],
        &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
    )
    .unwrap();
    let r = Relation::new(vec![
        (Q.one(), q.path_by_names(&["b", "a"]).unwrap()),
        (Q.from_i64(-1), q.path_by_names(&["d", "c"]).unwrap()),
    ])
    .unwrap();
    AlgebraPresentation::build(Q, q, vec![r], None).unwrap()
}

#[test]
fn dimensions_of_fixtures() {
    assert_eq!(a2().dim(), 3);
    assert_eq!(ex49a().dim(), 6);
    assert_eq!(ex49b().dim(), 9);
    assert_eq!(ex65a().dim(), 11);
    assert_eq!(commutative_square().dim(), 9);
}

#[test]
fn ex65a_basis_by_length() {
    let a = ex65a();
    let mut counts = [0usize; 4];
    for p in a.basis() {
        counts[p.len()] += 1;
    }
    assert_eq!(counts, [4, 4, 2, 1]);
}

#[test]
fn normal_forms() {
    let a = ex49a();
    let q = a.quiver().clone();
    let e1 = Path::trivial(0);
    assert_eq!(a.normal_form(&[(Q.one(), e1.clone())]).unwrap(), vec![(a.basis_index(&e1).unwrap(), Q.one())]);
    let ba = q.path_by_names(&["b", "a"]).unwrap();
    assert!(a.normal_form(&[(Q.one(), ba)]).unwrap().is_empty());

    let c = ex65a();
    let da = c.quiver().path_by_names(&["d", "a"]).unwrap();
    assert!(c.normal_form(&[(Q.one(), da)]).unwrap().is_empty());
    assert!(c.normal_form(&[]).unwrap().is_empty());
}

#[test]
fn commutativity_relation_rewrites_leading_path() {
    let a = commutative_square();
    let q = a.quiver().clone();
    let ba = q.path_by_names(&["b", "a"]).unwrap();
    let dc = q.path_by_names(&["d", "c"]).unwrap();
    let nf_ba = a.normal_form(&[(Q.one(), ba)]).unwrap();
    let nf_dc = a.normal_form(&[(Q.one(), dc)]).unwrap();
    assert_eq!(nf_ba, nf_dc);
    assert_eq!(nf_ba.len(), 1);
}

#[test]
fn foreign_paths_are_rejected() {
    let a = a2();
    let other = Quiver::from_names(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap();
    let ba = other.path_by_names(&["b", "a"]).unwrap();
    assert!(matches!(a.normal_form(&[(Q.one(), ba)]), Err(Error::ForeignPath(_))));
}

#[test]
fn loop_without_relations_is_not_admissible() {
    let q = Quiver::from_names(&["1"], &[("x", "1", "1")]).unwrap();
    let err = AlgebraPresentation::build(Q, q.clone(), vec![], Some(6)).unwrap_err();
    assert_eq!(err, Error::NotAdmissible(6));
    let r = monomial(&q, &["x", "x", "x"]);
    let a = AlgebraPresentation::build(Q, q, vec![r], Some(6)).unwrap();
    assert_eq!(a.dim(), 3);
}

#[test]
fn malformed_relations() {
    let q = Quiver::from_names(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")]).unwrap();
    let c = q.path_by_names(&["c"]).unwrap();
    assert!(matches!(Relation::monomial(c.clone()), Err(Error::MalformedRelation(_))));
    let ba = q.path_by_names(&["b", "a"]).unwrap();
    let a = q.path_by_names(&["a"]).unwrap();
    assert!(Relation::new(vec![(Q.one(), ba.clone()), (Q.one(), a)]).is_err());
    assert!(Relation::new(vec![(Q.one(), ba.clone()), (Q.from_i64(-1), ba)]).is_err());
}

#[test]
fn opposite_is_an_involution() {
    let a = ex49a();
    let op = a.opposite().unwrap();
    assert_eq!(op.dim(), a.dim());
    let back = op.opposite().unwrap();
    assert!(back.same_as(&a));

    let b = a2().opposite().unwrap();
    let arr = b.quiver().arrow(0);
    assert_eq!((arr.source, arr.target), (1, 0));

    let c = ex65a().opposite().unwrap();
    assert_eq!(c.dim(), 11);
    let q = c.quiver();
    let ad = q.path_by_names(&["a", "d"]).unwrap();
    assert_eq!((ad.source(), ad.target()), (3, 0));
    assert!(c.normal_form(&[(Q.one(), ad)]).unwrap().is_empty());
}

#[test]
fn hom_space_dims_examples() {
    let d = a2().hom_space_dims();
    assert_eq!(d[0][0], 1);
    assert_eq!(d[1][0], 1);
    assert_eq!(d[1][1], 1);
    assert_eq!(d[0][1], 0);
    assert_eq!(ex49a().hom_space_dims()[2][0], 1);
    let b = ex49b();
    let total: usize = b.hom_space_dims().iter().flatten().sum();
    assert_eq!(total, 9);
}

#[test]
fn identity_is_two_sided_unit() {
    for a in [a2(), ex49a(), ex49b(), ex65a(), commutative_square()] {
        for i in 0..a.dim() {
            let p = &a.basis()[i];
            let left = a.basis_index(&Path::trivial(p.target())).unwrap();
            let right = a.basis_index(&Path::trivial(p.source())).unwrap();
            assert_eq!(a.mul_basis(left, i), &vec![(i, Q.one())]);
            assert_eq!(a.mul_basis(i, right), &vec![(i, Q.one())]);
        }
    }
}

#[test]
fn multiplication_is_associative() {
    for a in [ex49b(), ex65a(), commutative_square()] {
        let n = a.dim();
        let times = |x: &BasisCombo, y: &BasisCombo| -> BasisCombo {
            let mut acc = std::collections::BTreeMap::new();
            for (i, c) in x {
                for (j, d) in y {
                    for (k, e) in a.mul_basis(*i, *j) {
                        let s = acc.entry(*k).or_insert_with(|| Q.zero());
                        *s = c.mul(d).mul(e).add(s);
                    }
                }
            }
            acc.into_iter().filter(|(_, c): &(usize, crate::exactla::Scalar)| !c.is_zero()).collect()
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let ij = a.mul_basis(i, j).clone();
                    let jk = a.mul_basis(j, k).clone();
                    assert_eq!(times(&ij, &vec![(k, Q.one())]), times(&vec![(i, Q.one())], &jk));
                }
            }
        }
    }
}

#[test]
fn prime_field_presentation() {
    let f = Field::prime(3).unwrap();
    let a = ex65a().over_field(f).unwrap();
    assert_eq!(a.dim(), 11);
    assert_eq!(a.field(), f);
}

#[test]
fn nakayama_dimensions() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let n = rand::Rng::gen_range(&mut rng, 1..=4);
        let c = random_kupisch(&mut rng, n);
        assert_eq!(c[n - 1], 1);
        for i in 0..n - 1 {
            assert!(c[i] >= 2 && c[i] <= c[i + 1] + 1);
        }
        let a = nakayama(&c);
        // P_i is uniserial of length c[i]
        for (i, &ci) in c.iter().enumerate() {
            assert_eq!(a.basis_from(i).len(), ci);
        }
        assert_eq!(a.dim(), c.iter().sum::<usize>());
    }
    let a = random_nakayama(&mut rng, 4);
    assert!((1..=4).contains(&a.num_vertices()));
}
