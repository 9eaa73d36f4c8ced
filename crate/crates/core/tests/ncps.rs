use qsym_core::diamond::abelianize;
use qsym_core::ncps::{func_eqn_residual, solve_w, verify_coaction_w, DualSteenrodModel, NCSeries};
use qsym_core::poly::{var, Poly};
use qsym_core::{AlgebraElement, Composition, Ring, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const Z: Ring = Ring::Integers;
const Q: Ring = Ring::Rationals;

#[test]
fn left_and_right_inverses_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let mut coeffs = vec![AlgebraElement::one(Z)];
        for n in 1..=6u32 {
            let mut c = AlgebraElement::zero(Z);
            for k in Composition::all_of_degree(n as usize) {
                if rng.gen_bool(0.4) {
                    c.add_term(k, &Z.from_int(rng.gen_range(-3..=3)));
                }
            }
            coeffs.push(c);
        }
        let s = NCSeries::new(Z, 6, coeffs);
        let r = s.invert().unwrap();
        let l = s.left_invert().unwrap();
        assert_eq!(r, l);
        assert_eq!(s.mul(&r).unwrap(), NCSeries::one(Z, 6));
        assert_eq!(l.mul(&s).unwrap(), NCSeries::one(Z, 6));
    }
}

/// `[t^{n+1}] W = (1/(n+1)) [x^n] (Σ_i c_i x^i)^{-(n+1)}` for the compositional
/// inverse `W` of `Σ_i c_i x^{i+1}`, with commuting `c_i` and `c_0 = 1`.
fn lagrange(n: usize) -> Poly {
    let g: Vec<Poly> = (0..=n).map(|i| if i == 0 { Poly::one(Q) } else { var(Q, i - 1) }).collect();
    // 1/g by the triangular recursion, then its (n+1)-st power
    let mut inv = vec![Poly::one(Q)];
    for k in 1..=n {
        let mut acc = Poly::zero(Q);
        for j in 1..=k {
            acc = &acc - &g[j].product(&inv[k - j]);
        }
        inv.push(acc);
    }
    let mut power = vec![Poly::zero(Q); n + 1];
    power[0] = Poly::one(Q);
    for _ in 0..=n {
        let mut next = vec![Poly::zero(Q); n + 1];
        for (a, pa) in power.iter().enumerate() {
            for (b, ib) in inv.iter().enumerate().take(n + 1 - a) {
                next[a + b] = &next[a + b] + &pa.product(ib);
            }
        }
        power = next;
    }
    power[n].scale(&Scalar::new(1.into(), (n as i64 + 1).into()))
}

#[test]
fn abelianized_w_matches_lagrange_inversion() {
    let ws = solve_w(6, Z);
    for n in 1..=6 {
        let abel = abelianize(&ws[n]).change_ring(Q).unwrap();
        assert_eq!(abel, lagrange(n), "n={n}");
    }
}

#[test]
fn solution_is_unique() {
    let ws = solve_w(5, Z);
    assert!(func_eqn_residual(&ws, 6).coeffs().iter().all(AlgebraElement::is_zero));
    for n in 1..=5 {
        let mut perturbed = ws.clone();
        perturbed[n] = &perturbed[n] + &AlgebraElement::basis(Z, Composition::single(n as u32));
        let residual = func_eqn_residual(&perturbed, 6);
        let first = residual.coeffs().iter().position(|c| !c.is_zero());
        assert_eq!(first, Some(n + 1), "n={n}");
    }
}

#[test]
fn w_degrees() {
    for (n, w) in solve_w(6, Z).iter().enumerate() {
        assert!(w.keys().all(|k| k.degree() == n));
    }
}

#[test]
fn coaction_p2() {
    let model = DualSteenrodModel::for_truncation(2, 8).unwrap();
    assert_eq!(model.substitution_inverses(), (true, true));
    let report = verify_coaction_w(8, &model).unwrap();
    assert!(report.passed(), "{report:?}");
    assert_eq!(report.abelianized.iter().map(|c| c.degree).collect::<Vec<_>>(), vec![1, 3, 7]);
}

#[test]
fn coaction_p3() {
    let model = DualSteenrodModel::for_truncation(3, 8).unwrap();
    assert_eq!(model.substitution_inverses(), (true, true));
    let report = verify_coaction_w(8, &model).unwrap();
    assert!(report.passed(), "{report:?}");
    assert_eq!(report.abelianized.iter().map(|c| c.degree).collect::<Vec<_>>(), vec![2, 8]);
}
