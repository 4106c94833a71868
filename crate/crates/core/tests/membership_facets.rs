mod common;

use common::{random_point, satisfies_all};
use corrpoly::geometry::{facet_enumeration, membership, Inequality, MembershipCertificate};
use corrpoly::scenario::{enumerate_vertices, presets, Point, Scenario};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn agree(s: &Scenario, n: usize, seed: u64) -> (usize, usize) {
    let v = enumerate_vertices(s).unwrap();
    let facets: Vec<Inequality> = facet_enumeration(&v).unwrap().facets;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut inside, mut outside) = (0, 0);
    for _ in 0..n {
        let p = random_point(&mut rng, &v);
        let cert = membership(&p, &v).unwrap();
        assert!(cert.verify(&p, &v), "certificate fails for {p}");
        assert_eq!(cert.is_inside(), satisfies_all(&p, &facets), "{} at {p}", s.name());
        if cert.is_inside() {
            inside += 1;
        } else {
            outside += 1;
        }
    }
    (inside, outside)
}

#[test]
fn ch_membership_matches_facets() {
    let (i, o) = agree(&presets::ch(), 300, 1);
    assert!(i > 50 && o > 50, "{i} inside, {o} outside");
}

#[test]
fn bell_wigner_membership_matches_facets() {
    let (i, o) = agree(&presets::bell_wigner(), 300, 2);
    assert!(i > 50 && o > 50, "{i} inside, {o} outside");
}

#[test]
fn separators_cut_off_pr_box() {
    let s = presets::ch();
    let v = enumerate_vertices(&s).unwrap();
    let mut c = vec![common::q(1, 2); 4];
    c.extend([common::q(1, 2), common::q(1, 2), common::q(1, 2), common::q(0, 1)]);
    let p = Point::new(c);
    let MembershipCertificate::Outside { separator } = membership(&p, &v).unwrap() else {
        panic!("PR box must be outside");
    };
    assert!(v.iter().all(|x| separator.satisfied_by(x)));
    assert!(!separator.satisfied_by(&p));
}
