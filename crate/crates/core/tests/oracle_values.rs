//! An independent brute-force model of M2(Z_n; s) used to freeze census
//! values and compare them with the library.

use jclean_core::catalog;
use jclean_core::formal::FMContext;
use jclean_core::ring::ElementId;
use jclean_core::suite::census;
use jclean_core::Caps;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct M([u64; 4]);

struct Naive {
    n: u64,
    s2: u64,
}

impl Naive {
    fn new(n: u64, s: u64) -> Self {
        Naive { n, s2: s * s % n }
    }

    fn all(&self) -> Vec<M> {
        let n = self.n;
        (0..n.pow(4))
            .map(|k| M([k % n, k / n % n, k / n / n % n, k / n / n / n]))
            .collect()
    }

    fn mul(&self, x: M, y: M) -> M {
        let ([a, b, c, d], [e, f, g, h], n, s2) = (x.0, y.0, self.n, self.s2);
        M([
            (a * e + s2 * b * g) % n,
            (a * f + b * h) % n,
            (c * e + d * g) % n,
            (s2 * c * f + d * h) % n,
        ])
    }

    fn sub(&self, x: M, y: M) -> M {
        M(std::array::from_fn(|i| (x.0[i] + self.n - y.0[i]) % self.n))
    }

    fn index(&self, m: M) -> usize {
        let n = self.n;
        (m.0[0] + n * (m.0[1] + n * (m.0[2] + n * m.0[3]))) as usize
    }

    fn one(&self) -> M {
        M([1, 0, 0, 1])
    }

    fn is_unit(&self, x: M, all: &[M]) -> bool {
        all.iter()
            .any(|&y| self.mul(x, y) == self.one() && self.mul(y, x) == self.one())
    }

    fn is_nilpotent(&self, x: M) -> bool {
        let mut p = x;
        for _ in 0..8 {
            if p == M([0; 4]) {
                return true;
            }
            p = self.mul(p, x);
        }
        false
    }

    /// J as the set of x with 1 - yx a unit for every y.
    fn radical(&self, all: &[M], units: &[bool]) -> Vec<bool> {
        all.iter()
            .map(|&x| {
                all.iter()
                    .all(|&y| units[self.index(self.sub(self.one(), self.mul(y, x)))])
            })
            .collect()
    }

    fn counts(&self) -> [usize; 7] {
        let all = self.all();
        let units: Vec<bool> = all.iter().map(|&x| self.is_unit(x, &all)).collect();
        let rad = self.radical(&all, &units);
        let idem: Vec<M> = all
            .iter()
            .copied()
            .filter(|&e| self.mul(e, e) == e)
            .collect();
        let clean = |a: M, target: &dyn Fn(M) -> bool| {
            idem.iter().any(|&e| {
                let w = self.sub(a, e);
                self.mul(e, w) == self.mul(w, e) && target(w)
            })
        };
        let mut sc = 0;
        let mut sjc = 0;
        let mut snc = 0;
        for &a in &all {
            sc += clean(a, &|w| units[self.index(w)]) as usize;
            sjc += clean(a, &|w| rad[self.index(w)]) as usize;
            snc += clean(a, &|w| self.is_nilpotent(w)) as usize;
        }
        [
            all.len(),
            units.iter().filter(|&&u| u).count(),
            idem.len(),
            rad.iter().filter(|&&r| r).count(),
            sc,
            sjc,
            snc,
        ]
    }
}

fn library(n: u64, s: u16) -> [usize; 7] {
    let ring = catalog::get(&format!("z{n}")).unwrap();
    let ctx = FMContext::from_catalog(&ring, ElementId(s), Caps::default()).unwrap();
    let row = census(&ctx, &ring.name).unwrap();
    [
        row.total,
        row.units,
        row.idempotents,
        row.jacobson,
        row.sc,
        row.sjc,
        row.snc,
    ]
    .map(|x| x as usize)
}

// Frozen from the naive model: total, units, idempotents, J, sc, sjc, snc.
const FROZEN: &[(u64, u16, [usize; 7])] = &[
    (2, 0, [16, 4, 10, 4, 16, 16, 16]),
    (2, 1, [16, 6, 8, 1, 16, 8, 14]),
    (3, 0, [81, 36, 20, 9, 81, 36, 36]),
    (3, 1, [81, 48, 14, 1, 81, 14, 30]),
    (4, 0, [256, 64, 34, 64, 256, 256, 256]),
    (4, 1, [256, 96, 26, 16, 256, 128, 224]),
    (4, 2, [256, 64, 34, 64, 256, 256, 256]),
];

#[test]
fn naive_model_matches_frozen_values() {
    for &(n, s, expected) in FROZEN {
        assert_eq!(Naive::new(n, s as u64).counts(), expected, "z{n} s={s}");
    }
}

#[test]
fn library_census_matches_frozen_values() {
    for &(n, s, expected) in FROZEN {
        assert_eq!(library(n, s), expected, "z{n} s={s}");
    }
}

#[test]
fn naive_product_is_associative_on_z3() {
    let model = Naive::new(3, 1);
    let all = model.all();
    for x in all.iter().step_by(7) {
        for y in all.iter().step_by(5) {
            for z in all.iter().step_by(11) {
                assert_eq!(
                    model.mul(model.mul(*x, *y), *z),
                    model.mul(*x, model.mul(*y, *z))
                );
            }
        }
    }
}
