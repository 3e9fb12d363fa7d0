use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::endo::apr_tilt;
use crate::exactla::Field;
use crate::fixtures;
use crate::repmod::{
    cokernel, decompose, direct_sum, ext_dim, hom_dim, is_isomorphic, kernel, random_module, random_morphism,
    Morphism, Representation,
};
use crate::tilting::{mutate_left, truncated_diagram, TiltingCandidate};

fn alg(name: &str) -> Algebra {
    fixtures::algebra(name).unwrap()
}

fn cover(alg_name: &str, grading: &str) -> CoveringData {
    let a = alg(alg_name);
    let (g, w) = Grading::from_spec(&a, &fixtures::grading_spec(grading).unwrap()).unwrap();
    build_covering(&a, &w, &g).unwrap()
}

fn ex65a_cover() -> CoveringData {
    cover("EX65A", "EX65A_Z2")
}

#[test]
fn group_arithmetic() {
    let g = FiniteGroup::new(vec![2, 3]).unwrap();
    assert_eq!(g.order(), 6);
    for i in 0..6 {
        assert_eq!(g.index(&g.element(i)), i);
        assert_eq!(g.add_index(i, g.neg_index(i)), 0);
    }
    assert_eq!(g.add(&[1, 2], &[1, 2]), vec![0, 1]);
    assert_eq!(g.reduce(&[-1, 7]).unwrap(), vec![1, 1]);
    assert!(g.reduce(&[1]).is_err());
    assert!(FiniteGroup::new(vec![0]).is_err());
    assert_eq!(FiniteGroup::trivial().order(), 1);
}

#[test]
fn homogeneity() {
    let g = FiniteGroup::cyclic(2).unwrap();
    for name in ["EX49A", "EX65A"] {
        let a = alg(name);
        assert!(check_homogeneous(&a, &Grading::zero(&a, &g), &g));
        for k in 0..a.quiver().num_arrows() {
            assert!(check_homogeneous(&a, &Grading::zero(&a, &g).with_weight(k, vec![1]), &g));
        }
    }
    // commutative square p - q
    let q = Quiver::from_names(&["1", "2", "3", "4"], &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")]).unwrap();
    let one = Field::Rational.one();
    let rel = Relation::new(vec![
        (one.clone(), q.path_by_names(&["b", "a"]).unwrap()),
        (one.neg(), q.path_by_names(&["d", "c"]).unwrap()),
    ])
    .unwrap();
    let sq = Arc::new(AlgebraPresentation::build(Field::Rational, q, vec![rel], None).unwrap());
    let w = Grading::zero(&sq, &g).with_weight(0, vec![1]);
    assert!(!check_homogeneous(&sq, &w, &g));
    assert!(matches!(build_covering(&sq, &w, &g), Err(Error::HeterogeneousGrading(_))));
    let w2 = w.with_weight(2, vec![1]);
    assert!(check_homogeneous(&sq, &w2, &g));
    assert!(verify_covering_functor(&build_covering(&sq, &w2, &g).unwrap()).passed());
}

#[test]
fn build_examples() {
    let a = alg("EX49A");
    let id = CoveringData::identity(&a).unwrap();
    assert_eq!(id.cover().quiver(), a.quiver());
    assert_eq!(id.cover().dim(), a.dim());
    assert!(verify_covering_functor(&id).passed());

    let two = cover("EX49A", "TRIVIAL_Z2");
    assert_eq!(two.cover().num_vertices(), 6);
    assert_eq!(two.cover().dim(), 2 * a.dim());
    let comps = components(two.cover());
    assert_eq!(comps, vec![vec![0, 1, 2], vec![3, 4, 5]]);
    assert!(!is_connected_category(two.cover()));
    assert!(is_connected_category(&a));
    assert!(verify_covering_functor(&two).passed());

    let c = ex65a_cover();
    assert_eq!(c.cover().num_vertices(), 8);
    assert_eq!(c.cover().dim(), 2 * alg("EX65A").dim());
    assert!(is_connected_category(c.cover()));
    let r = verify_covering_functor(&c);
    assert!(r.passed(), "{:?}", r.assertions);
    assert_eq!(r.checked_pairs, 64);
}

#[test]
fn corrupted_covering_fails() {
    let c = ex65a_cover();
    let a = c.base().quiver().arrow_index("a").unwrap();
    let alpha = c.arrow(a, 0);
    let t = c.cover().quiver().arrow(alpha).target;
    let moved = c.act_vertex(1, t);
    let bad = c.with_arrow_retargeted(alpha, moved).unwrap();
    let r = verify_covering_functor(&bad);
    assert!(!r.passed());
    assert!(!r.failures.is_empty());
    let target_name = bad.cover().quiver().vertex_name(t).to_string();
    assert!(r.failures.iter().any(|f| f.target == target_name));
}

#[test]
fn pushdown_and_pullup_examples() {
    let c = ex65a_cover();
    let a = c.base().clone();
    let cv = c.cover().clone();
    let order = c.group().order();
    for x in 0..a.num_vertices() {
        for g in 0..order {
            let v = c.vertex(x, g);
            let s = pushdown(&c, &Representation::simple(&cv, v)).unwrap();
            assert!(s.same_matrices(&Representation::simple(&a, x)));
            let p = pushdown(&c, &Representation::projective(&cv, v)).unwrap();
            assert!(is_isomorphic(&p, &Representation::projective(&a, x), 0));
        }
        let sx = Representation::simple(&a, x);
        let pp = pushdown(&c, &pullup(&c, &sx).unwrap()).unwrap();
        assert_eq!(decompose(&pp).unwrap().len(), 1);
        assert!(is_isomorphic(&pp, &direct_sum(&a, &vec![sx.clone(); order]).0, 0));
        let up = pullup(&c, &sx).unwrap();
        let parts = decompose(&up).unwrap();
        assert_eq!(parts.len(), order);
        for g in 0..order {
            let s = Representation::simple(&cv, c.vertex(x, g));
            assert!(parts.iter().any(|(m, k)| *k == 1 && is_isomorphic(m, &s, 0)));
        }
    }
    let reg = pullup(&c, &Representation::regular(&a)).unwrap();
    assert!(is_isomorphic(&reg, &Representation::regular(&cv), 0));
    assert_eq!(reg.total_dim(), order * a.dim());
}

#[test]
fn twists() {
    let c = ex65a_cover();
    let cv = c.cover().clone();
    let g = c.group().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let m = random_module(&cv, &mut rng, 3);
    assert!(g_twist(&c, &m, &g.identity()).unwrap().same_matrices(&m));
    for h in g.elements() {
        let t = g_twist(&c, &m, &h).unwrap();
        assert!(pushdown(&c, &t).unwrap().dims() == pushdown(&c, &m).unwrap().dims());
        assert!(is_isomorphic(&pushdown(&c, &t).unwrap(), &pushdown(&c, &m).unwrap(), 0));
        for k in g.elements() {
            let both = g_twist(&c, &t, &k).unwrap();
            let once = g_twist(&c, &m, &g.add(&h, &k)).unwrap();
            assert!(both.same_matrices(&once));
        }
        for v in 0..cv.num_vertices() {
            let s = g_twist(&c, &Representation::simple(&cv, v), &h).unwrap();
            let moved = c.act_vertex(g.index(&h), v);
            assert!(s.same_matrices(&Representation::simple(&cv, moved)));
        }
    }
}

#[test]
fn first_kind_examples() {
    let c = ex65a_cover();
    let a = c.base().clone();
    let cv = c.cover().clone();
    for x in 0..a.num_vertices() {
        let w = first_kind_test(&c, &Representation::projective(&a, x), 0).unwrap().unwrap();
        assert!(is_isomorphic(&w.lift, &Representation::projective(&cv, c.vertex(x, 0)), 0));
        assert!(w.iso.is_isomorphism());
    }
    let s3 = Representation::simple(&a, a.quiver().vertex_index("3").unwrap());
    let w = first_kind_test(&c, &s3, 0).unwrap().unwrap();
    assert!(w.lift.same_matrices(&Representation::simple(&cv, c.vertex(2, 0))));
    let t = apr_tilt(&a, a.quiver().vertex_index("4").unwrap()).unwrap();
    let fk = summands_first_kind(&c, t.summands(), 0).unwrap();
    assert!(fk.is_first_kind());
    let whole = module_first_kind(&c, &t.module(&a), 0).unwrap();
    assert_eq!(whole.summands.len(), 4);
    assert!(whole.is_first_kind());
}

#[test]
fn homogeneous_parts() {
    let c = ex65a_cover();
    let cv = c.cover().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let m = random_module(&cv, &mut rng, 3);
    let n = Representation::projective(&cv, c.vertex(0, 0));
    let n = direct_sum(&cv, &[n.clone(), g_twist(&c, &n, &vec![1]).unwrap()]).0;
    let (pm, pn) = (pushdown(&c, &m).unwrap(), pushdown(&c, &n).unwrap());

    let id = Morphism::identity(&pm);
    let parts = homogeneous_components(&c, &m, &m, &id).unwrap();
    assert_eq!(parts.len(), 1);
    assert_eq!(parts[0].degree, vec![0]);

    let hat = random_morphism(&m, &n, &mut rng);
    if !hat.is_zero() {
        let f = pushdown_morphism(&c, &hat).unwrap();
        let parts = homogeneous_components(&c, &m, &n, &f).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].hat.flatten(), hat.flatten());
    }

    for _ in 0..4 {
        let f = random_morphism(&pm, &pn, &mut rng);
        let parts = homogeneous_components(&c, &m, &n, &f).unwrap();
        assert!(parts.len() <= 2);
        let mut sum = Morphism::zero(&pm, &pn);
        for p in &parts {
            sum = sum.add(&p.block);
        }
        assert_eq!(sum.flatten(), f.flatten());
        let degs: Vec<_> = parts.iter().map(|p| p.degree.clone()).collect();
        let mut uniq = degs.clone();
        uniq.dedup();
        assert_eq!(uniq, degs);
    }
}

#[test]
fn pullup_tilting_examples() {
    let c = ex65a_cover();
    let a = c.base().clone();
    let t = apr_tilt(&a, 3).unwrap();
    let r = pullup_tilting_check(&c, &t, None, 0).unwrap();
    assert!(r.passed(), "{:?}", r.assertions);
    assert_eq!(r.checked, 8);

    let e = alg("EX49A");
    let two = cover("EX49A", "TRIVIAL_Z2");
    let t = apr_tilt(&e, 2).unwrap();
    let r = pullup_tilting_check(&two, &t, None, 0).unwrap();
    assert!(r.passed(), "{:?}", r.assertions);
    assert_eq!(r.checked, 6);

    let id = CoveringData::identity(&e).unwrap();
    let r = pullup_tilting_check(&id, &t, None, 0).unwrap();
    assert!(r.passed());
    assert_eq!(r.checked, 3);
}

fn witnesses(c: &CoveringData, t: &TiltingCandidate) -> Vec<FirstKindWitness> {
    summands_first_kind(c, t.summands(), 0)
        .unwrap()
        .witnesses
        .into_iter()
        .map(Option::unwrap)
        .collect()
}

#[test]
fn endo_covering_examples() {
    let e = alg("EX49A");
    let t = apr_tilt(&e, 2).unwrap();
    let id = CoveringData::identity(&e).unwrap();
    let ec = endo_covering(&id, &t, &witnesses(&id, &t)).unwrap();
    assert_eq!(ec.covering.cover().quiver(), ec.endo.algebra().quiver());
    assert_eq!(ec.endo.algebra().dim(), 9);

    let two = cover("EX49A", "TRIVIAL_Z2");
    let ec = endo_covering(&two, &t, &witnesses(&two, &t)).unwrap();
    assert!(ec.report.passed());
    assert_eq!(components(ec.covering.cover()).len(), 2);

    let c = ex65a_cover();
    let a = c.base().clone();
    let t = apr_tilt(&a, 3).unwrap();
    let ec = endo_covering(&c, &t, &witnesses(&c, &t)).unwrap();
    assert!(ec.report.passed());
    assert!(is_connected_category(ec.covering.cover()));
    assert_eq!(ec.covering.cover().num_vertices(), 8);
    assert!(ec.endo.algebra().relations().is_empty());
    assert!(ec.degrees.iter().any(|d| *d == vec![1]));
}

#[test]
fn first_kind_and_basic_pullups_along_edges() {
    let c = ex65a_cover();
    let a = c.base().clone();
    let d = truncated_diagram(&a, &TiltingCandidate::regular(&a), 5, None).unwrap();
    assert!(d.num_edges() >= 4);
    for e in d.edges() {
        let (s, t) = (d.candidate(e.source), d.candidate(e.target));
        let fs = summands_first_kind(&c, s.summands(), 0).unwrap().is_first_kind();
        let ft = summands_first_kind(&c, t.summands(), 0).unwrap().is_first_kind();
        assert_eq!(fs, ft);
        let basic = |t: &TiltingCandidate| pullup_tilting_check(&c, t, None, 0).unwrap().assertions[3].passed;
        assert_eq!(basic(&s), basic(&t));
        let (m, _) = mutate_left(&s, e.index, None).unwrap().unwrap();
        assert_eq!(d.find(&m), Some(e.target));
    }
}

fn exact_at_middle(f: &Morphism, g: &Morphism) -> bool {
    g.after(f).is_zero() && f.is_injective() && g.is_surjective() && f.rank() + g.rank() == f.target().total_dim()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn adjunction_dimensions(seed in 0u64..10_000, which in 0usize..2) {
        let c = if which == 0 { ex65a_cover() } else { cover("EX49A", "TRIVIAL_Z2") };
        let (a, cv) = (c.base().clone(), c.cover().clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(&cv, &mut rng, 2);
        let n = random_module(&a, &mut rng, 2);
        let (fm, fn_) = (pushdown(&c, &m).unwrap(), pullup(&c, &n).unwrap());
        prop_assert_eq!(hom_dim(&fn_, &m).unwrap(), hom_dim(&n, &fm).unwrap());
        prop_assert_eq!(hom_dim(&fm, &n).unwrap(), hom_dim(&m, &fn_).unwrap());
        for j in 1..=2 {
            prop_assert_eq!(ext_dim(&fm, &n, j, 8).unwrap(), ext_dim(&m, &fn_, j, 8).unwrap());
        }
        for x in 0..a.num_vertices() {
            prop_assert_eq!(fm.dim(x), c.fiber(x).iter().map(|&v| m.dim(v)).sum::<usize>());
        }
        prop_assert_eq!(fn_.total_dim(), c.group().order() * n.total_dim());
    }

    #[test]
    fn functors_are_exact(seed in 0u64..10_000) {
        let c = ex65a_cover();
        let (a, cv) = (c.base().clone(), c.cover().clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(&cv, &mut rng, 2);
        let n = random_module(&cv, &mut rng, 2);
        let u = random_morphism(&m, &n, &mut rng);
        let (_, i) = kernel(&u);
        let (_, p) = cokernel(&i);
        prop_assert!(exact_at_middle(&i, &p));
        let (pi, pp) = (pushdown_morphism(&c, &i).unwrap(), pushdown_morphism(&c, &p).unwrap());
        prop_assert!(exact_at_middle(&pi, &pp));
        let x = random_module(&a, &mut rng, 2);
        let y = random_module(&a, &mut rng, 2);
        let v = random_morphism(&x, &y, &mut rng);
        let (_, i) = kernel(&v);
        let (_, p) = cokernel(&i);
        let (ui, up) = (pullup_morphism(&c, &i).unwrap(), pullup_morphism(&c, &p).unwrap());
        prop_assert!(exact_at_middle(&ui, &up));
    }

    #[test]
    fn pushdown_of_pullup_for_first_kind(seed in 0u64..10_000) {
        let c = ex65a_cover();
        let (a, cv) = (c.base().clone(), c.cover().clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(&cv, &mut rng, 2);
        for s in crate::repmod::split(&m).unwrap() {
            let x = pushdown(&c, &s.module).unwrap();
            let lhs = pushdown(&c, &pullup(&c, &x).unwrap()).unwrap();
            let rhs = direct_sum(&a, &vec![x.clone(); c.group().order()]).0;
            prop_assert!(is_isomorphic(&lhs, &rhs, seed));
            for h in c.group().elements() {
                let t = g_twist(&c, &s.module, &h).unwrap();
                prop_assert!(is_isomorphic(&pushdown(&c, &t).unwrap(), &x, seed));
            }
        }
    }
}
