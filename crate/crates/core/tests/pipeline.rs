use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qtilt::endo::{apr_tilt, endo_presentation, transport};
use qtilt::repmod::{ext_dim, hom_dim, is_isomorphic, random_module};
use qtilt::tilting::{hasse_diagram, is_tilting};
use qtilt::{fixtures, Algebra, Representation, TiltingCandidate};

fn alg(name: &str) -> Algebra {
    fixtures::algebra(name).unwrap()
}

/// `Σ m_x n_x − Σ_{a: x→y} m_x n_y`.
fn euler(a: &Algebra, m: &[usize], n: &[usize]) -> i64 {
    let diag: i64 = m.iter().zip(n).map(|(x, y)| (x * y) as i64).sum();
    let off: i64 = a.quiver().arrows().iter().map(|arr| (m[arr.source] * n[arr.target]) as i64).sum();
    diag - off
}

fn hereditary() -> Vec<Algebra> {
    let e = alg("EX65A");
    let b = endo_presentation(&apr_tilt(&e, 3).unwrap()).unwrap().algebra().clone();
    vec![alg("A2"), b]
}

#[test]
fn fixtures_load_and_are_admissible() {
    for name in fixtures::ALGEBRA_NAMES {
        let a = alg(name);
        assert!(a.dim() >= a.num_vertices());
        let dims = a.hom_space_dims();
        let total: usize = dims.iter().flatten().sum();
        assert_eq!(total, a.dim());
    }
}

#[test]
fn endo_of_every_diagram_vertex_is_consistent() {
    for name in ["A2", "EX49A"] {
        let a = alg(name);
        let d = hasse_diagram(&a, &TiltingCandidate::regular(&a), None, None).unwrap();
        for v in 0..d.num_vertices() {
            let t = d.candidate(v);
            assert!(is_tilting(&t, None).is_yes());
            let e = endo_presentation(&t).unwrap();
            let b = e.algebra();
            let expected: usize = t.summands().iter().flat_map(|x| t.summands().iter().map(move |y| hom_dim(x, y).unwrap())).sum();
            assert_eq!(b.dim(), expected);
            let tt = transport(&t.module(&a), &e).unwrap();
            assert!(is_isomorphic(tt.module(), &Representation::regular(b), 0));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hom_from_projectives_and_into_injectives(seed in 0u64..100_000, which in 0usize..4) {
        let a = alg(fixtures::ALGEBRA_NAMES[which]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(&a, &mut rng, 3);
        for x in 0..a.num_vertices() {
            prop_assert_eq!(hom_dim(&Representation::projective(&a, x), &m).unwrap(), m.dim(x));
            prop_assert_eq!(hom_dim(&m, &Representation::injective(&a, x)).unwrap(), m.dim(x));
        }
    }

    #[test]
    fn euler_form_on_hereditary_algebras(seed in 0u64..100_000, which in 0usize..2) {
        let a = &hereditary()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_module(a, &mut rng, 2);
        let n = random_module(a, &mut rng, 2);
        let h = hom_dim(&m, &n).unwrap() as i64;
        let e1 = ext_dim(&m, &n, 1, 6).unwrap() as i64;
        prop_assert_eq!(h - e1, euler(a, m.dims(), n.dims()));
        prop_assert_eq!(ext_dim(&m, &n, 2, 6).unwrap(), 0);
    }
}
