mod common;

use common::oracle::{in_box, relations, to_big, BOX};
use degree0::k3::{self, IntersectionForm, K3Verdict, PeriodPoint};
use degree0::linalg::forms;
use degree0::sampling::rng_for;
use degree0::{FieldContext, FieldElement};
use num_bigint::BigInt;
use rand::Rng;

fn u3() -> IntersectionForm {
    IntersectionForm::new(forms::direct_sum(&[forms::hyperbolic(), forms::hyperbolic(), forms::hyperbolic()])).unwrap()
}

fn suites() -> Vec<(IntersectionForm, Vec<i64>, u64)> {
    vec![
        (IntersectionForm::uu(), vec![2, 3], 7),
        (IntersectionForm::uu(), vec![2, 3], 1),
        (IntersectionForm::uu(), vec![2], 1),
        (u3(), vec![2], 1),
    ]
}

fn unit(ctx: &std::sync::Arc<FieldContext>, n: usize, j: usize) -> Vec<FieldElement> {
    (0..n).map(|k| if k == j { ctx.one() } else { ctx.zero() }).collect()
}

fn pair_with(form: &IntersectionForm, p: &PeriodPoint, m: &[BigInt]) -> FieldElement {
    let ctx = p.context();
    let v: Vec<FieldElement> = m.iter().map(|c| FieldElement::from_integer(ctx, c.clone())).collect();
    form.pairing(p.coords(), &v).unwrap()
}

#[test]
fn kernel_agrees_with_brute_force() {
    let (mut total, mut nontrivial) = (0, 0);
    for (form, radicands, height) in suites() {
        let ctx = FieldContext::new(radicands.clone()).unwrap();
        for i in 0..100 {
            let p = k3::sample_quadric(&form, &ctx, height, &mut rng_for(9, i), 1000).unwrap();
            assert!(k3::on_quadric(&p, &form).unwrap());
            let kernel = k3::picard_kernel(&p, &form).unwrap();
            // the oracle works with A(lambda, e_j) directly
            let row: Vec<FieldElement> =
                (0..form.dim()).map(|j| form.pairing(p.coords(), &unit(&ctx, form.dim(), j)).unwrap()).collect();
            let brute = relations(&row, BOX, 100);
            assert_eq!(brute.any, !kernel.is_trivial(), "dim {} {radicands:?} sample {i}", form.dim());
            for v in &brute.sample {
                assert!(kernel.contains(&to_big(v)));
            }
            for b in &kernel.basis {
                assert!(pair_with(&form, &p, b).is_zero());
                if in_box(b, BOX) {
                    assert!(brute.any);
                }
            }
            let r = k3::classify(&p, &form).unwrap();
            assert_eq!(r.verdict == K3Verdict::Degree0Certified, kernel.is_trivial());
            nontrivial += usize::from(!kernel.is_trivial());
            total += 1;
        }
    }
    assert_eq!(total, 400);
    assert!(nontrivial > 0 && nontrivial < total);
}

#[test]
fn pairing_is_bilinear_on_kernel_members() {
    let form = IntersectionForm::uu();
    let ctx = FieldContext::new([2]).unwrap();
    let mut rng = rng_for(2, 0);
    for i in 0..30 {
        let p = k3::sample_quadric(&form, &ctx, 1, &mut rng_for(4, i), 1000).unwrap();
        let kernel = k3::picard_kernel(&p, &form).unwrap();
        let combo = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<BigInt> {
            let c: Vec<BigInt> = kernel.basis.iter().map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect();
            (0..4).map(|j| kernel.basis.iter().zip(&c).map(|(b, c)| &b[j] * c).sum()).collect()
        };
        let (m1, m2) = (combo(&mut rng), combo(&mut rng));
        let sum: Vec<BigInt> = m1.iter().zip(&m2).map(|(a, b)| a + b).collect();
        assert_eq!(pair_with(&form, &p, &sum), pair_with(&form, &p, &m1) + pair_with(&form, &p, &m2));
        assert!(pair_with(&form, &p, &sum).is_zero());
        // arbitrary vectors too
        let a: Vec<BigInt> = (0..4).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect();
        let b: Vec<BigInt> = (0..4).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect();
        let ab: Vec<BigInt> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        assert_eq!(pair_with(&form, &p, &ab), pair_with(&form, &p, &a) + pair_with(&form, &p, &b));
    }
}

#[test]
fn genuine_k3_points() {
    let form = IntersectionForm::k3();
    assert_eq!(k3::check_form(&form, true).unwrap().as_tuple(), (3, 19, 0));
    let ctx = FieldContext::new([2, 3, 5, 7, 11]).unwrap();
    for i in 0..5 {
        let p = k3::sample_quadric(&form, &ctx, 3, &mut rng_for(1, i), 100).unwrap();
        let r = k3::classify(&p, &form).unwrap();
        assert_eq!(r.dim, 22);
        // 22 unknowns against 32 rational equations from a generic point
        assert_eq!(r.verdict, K3Verdict::Degree0Certified);
    }
    // a rational period point has a corank-one kernel
    let q = FieldContext::rationals();
    let mut lambda = vec![q.zero(); 22];
    lambda[0] = q.one();
    let p = PeriodPoint::new(lambda).unwrap();
    assert_eq!(k3::picard_kernel(&p, &form).unwrap().rank(), 21);
}
