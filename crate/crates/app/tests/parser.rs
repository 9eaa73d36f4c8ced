use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qsym_app::expr::{parse, typecheck, Algebra, Expr, GenKind};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Ty {
    Scalar,
    QSymm,
    NSymm,
    Symm,
}

struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    fn leaf(&mut self, ty: Ty) -> Expr {
        let r = &mut self.rng;
        match ty {
            Ty::Scalar => Expr::Number {
                numer: BigInt::from(r.gen_range(0..1000u32)),
                denom: r.gen_bool(0.3).then(|| BigInt::from(r.gen_range(1..50u32))),
            },
            Ty::QSymm => Expr::Key((0..r.gen_range(0..4)).map(|_| r.gen_range(1..6)).collect()),
            Ty::NSymm => Expr::Gen(if r.gen_bool(0.7) { GenKind::Z } else { GenKind::NewtonQ }, r.gen_range(1..6)),
            Ty::Symm => {
                let kind = [GenKind::C, GenKind::V, GenKind::NewtonSymm][r.gen_range(0..3)];
                Expr::Gen(kind, r.gen_range(1..6))
            }
        }
    }

    fn expr(&mut self, ty: Ty, depth: u32) -> Expr {
        if depth == 0 || self.rng.gen_bool(0.2) {
            return self.leaf(ty);
        }
        let b = |e: Expr| Box::new(e);
        let d = depth - 1;
        let choice = self.rng.gen_range(0..10);
        match (choice, ty) {
            (0, _) => Expr::Add(b(self.expr(ty, d)), b(self.operand(ty, d))),
            (1, _) => Expr::Sub(b(self.operand(ty, d)), b(self.expr(ty, d))),
            (2, _) if self.rng.gen_bool(0.5) => Expr::Mul(b(self.operand(ty, d)), b(self.expr(ty, d))),
            (2, _) => Expr::Mul(b(self.expr(ty, d)), b(self.operand(ty, d))),
            (3, _) => Expr::Neg(b(self.expr(ty, d))),
            (4, _) => Expr::Pow(b(self.expr(ty, d)), self.rng.gen_range(0..4)),
            (5, Ty::QSymm) => Expr::Steenrod(self.rng.gen_range(0..4), b(self.expr(Ty::QSymm, d))),
            (5 | 6, Ty::QSymm | Ty::NSymm | Ty::Symm) => Expr::Antipode(b(self.expr(ty, d))),
            (7, Ty::Scalar) => Expr::Pair(b(self.expr(Ty::QSymm, d)), b(self.expr(Ty::NSymm, d))),
            (7, Ty::NSymm) => Expr::Diamond(b(self.expr(Ty::NSymm, d)), b(self.expr(Ty::NSymm, d))),
            (7, Ty::Symm) => Expr::Abelianize(b(self.expr(Ty::NSymm, d))),
            _ => self.leaf(ty),
        }
    }

    /// Either the same algebra or a scalar, which promotes.
    fn operand(&mut self, ty: Ty, depth: u32) -> Expr {
        let t = if self.rng.gen_bool(0.25) { Ty::Scalar } else { ty };
        self.expr(t, depth)
    }
}

fn algebra(ty: Ty) -> Algebra {
    match ty {
        Ty::Scalar => Algebra::Scalar,
        Ty::QSymm => Algebra::QSymm,
        Ty::NSymm => Algebra::NSymm,
        Ty::Symm => Algebra::Symm,
    }
}

#[test]
fn print_parse_round_trip() {
    let mut g = Gen { rng: ChaCha8Rng::seed_from_u64(5) };
    let types = [Ty::Scalar, Ty::QSymm, Ty::NSymm, Ty::Symm];
    for i in 0..1000 {
        let ty = types[i % 4];
        let e = g.expr(ty, 5);
        assert_eq!(typecheck(&e), Ok(algebra(ty)), "{e}");
        let text = e.to_string();
        assert_eq!(parse(&text).as_ref(), Ok(&e), "{text}");
    }
}

#[test]
fn coproduct_is_tensor_typed() {
    let e = parse("coproduct([1,2]) - 2*coproduct([3])").unwrap();
    assert_eq!(typecheck(&e), Ok(Algebra::Tensor(Box::new(Algebra::QSymm))));
    assert_eq!(parse(&e.to_string()).unwrap(), e);
}

#[test]
fn juxtaposition_matches_star() {
    for (a, b) in [("[3][1,2]", "[3]*[1,2]"), ("2Z1 Z2", "2*Z1*Z2"), ("(c1 + c2)c3", "(c1 + c2)*c3")] {
        assert_eq!(parse(a).unwrap(), parse(b).unwrap());
    }
}
