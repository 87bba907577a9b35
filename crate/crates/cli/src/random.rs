//! Seeded generators for objects, morphisms, complexes and chain maps.
//!
//! Everything is deterministic in the seed. Complexes are built as iterated cones of
//! random chain maps between sums of spheres and disks, then conjugated degreewise
//! by random automorphisms, so `d² = 0` holds by construction.

use hocat::chain::{
    cone, cycles, direct_sum_complexes, disk, hom_complex, sphere, ChainMap, Complex,
};
use hocat::exactlin::{complement_basis, inverse, IntMatrix, Integer, RatMatrix, Rational, Scalar};
use hocat::excat::{InstanceId, Mor, Obj};
use hocat::model::ModelFlavor;
use hocat::resolve::resolve_complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Torsion parts used for random groups; each is a divisibility chain.
const TORSION_CHAINS: &[&[i64]] = &[&[], &[2], &[3], &[4], &[6], &[2, 2], &[2, 4], &[3, 6]];

/// Seed of case `index` under a run seed.
pub fn case_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Degree window `[lo, hi]` for random complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn for_flavor(flavor: ModelFlavor) -> Window {
        match flavor {
            ModelFlavor::ChGeq0 => Window { lo: 0, hi: 2 },
            ModelFlavor::ChPlus => Window { lo: -1, hi: 2 },
        }
    }

    pub fn down(self) -> Window {
        Window {
            lo: self.lo - 1,
            hi: self.hi - 1,
        }
    }

    /// `[lo, hi − 1]`: a cone of an identity on it lands back in the window.
    pub fn inner(self) -> Window {
        Window {
            lo: self.lo,
            hi: (self.hi - 1).max(self.lo),
        }
    }
}

pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn below(&mut self, n: usize) -> usize {
        if n == 0 {
            0
        } else {
            self.rng.gen_range(0..n)
        }
    }

    pub fn upto(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..=n)
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len())]
    }

    fn small(&mut self) -> i64 {
        if self.coin(0.35) {
            0
        } else {
            self.range(-2, 2)
        }
    }

    fn small_matrix(&mut self, rows: usize, cols: usize) -> RatMatrix {
        RatMatrix::from_fn(rows, cols, |_, _| Rational::from(self.small()))
    }

    /// A rational matrix whose rank is spread over `0..=min(rows, cols)`.
    fn ranked_matrix(&mut self, rows: usize, cols: usize) -> RatMatrix {
        if self.coin(0.4) {
            return self.small_matrix(rows, cols);
        }
        let r = self.upto(rows.min(cols));
        let a = self.small_matrix(rows, r);
        let b = self.small_matrix(r, cols);
        a.mul(&b)
    }

    /// Unipotent-times-diagonal invertible matrix.
    fn invertible_matrix(&mut self, n: usize) -> RatMatrix {
        let mut l = RatMatrix::identity(n);
        let mut u = RatMatrix::identity(n);
        for i in 0..n {
            for j in 0..i {
                l.set(i, j, Rational::from(self.small()));
                u.set(j, i, Rational::from(self.small()));
            }
        }
        let diag: Vec<Rational> = (0..n)
            .map(|_| match self.below(4) {
                0 => Rational::from(-1),
                1 => Rational::from(2),
                2 => Rational::new(Integer::one(), Integer::new(2)),
                _ => Rational::one(),
            })
            .collect();
        l.mul(&RatMatrix::diagonal(&diag)).mul(&u)
    }

    pub fn object(&mut self, instance: InstanceId, max_size: usize) -> Obj {
        self.object_with(instance, max_size, false)
    }

    /// A random object of at most `max_size` generators, projective when asked.
    pub fn object_with(&mut self, instance: InstanceId, max_size: usize, projective: bool) -> Obj {
        match instance {
            InstanceId::VectQ => Obj::vect(self.upto(max_size)),
            InstanceId::FiltQ => {
                let dim = self.upto(max_size);
                let k = self.upto(dim);
                if self.coin(0.5) {
                    Obj::filt_std(dim, k)
                } else {
                    let sub = self.small_matrix(dim, k);
                    Obj::filt(dim, &sub).expect("subspace has the right ambient dimension")
                }
            }
            InstanceId::FgAb => {
                let free = self.upto(max_size.min(2));
                let chains: Vec<&[i64]> = TORSION_CHAINS
                    .iter()
                    .copied()
                    .filter(|t| free + t.len() <= max_size && (!projective || t.is_empty()))
                    .collect();
                let t = self.pick(&chains);
                Obj::ab(free, t).expect("divisibility chain")
            }
        }
    }

    /// A nonzero object, when `max_size ≥ 1`.
    pub fn nonzero_object(
        &mut self,
        instance: InstanceId,
        max_size: usize,
        projective: bool,
    ) -> Obj {
        for _ in 0..8 {
            let o = self.object_with(instance, max_size, projective);
            if !o.is_zero() {
                return o;
            }
        }
        Obj::unit(instance)
    }

    pub fn mor(&mut self, src: &Obj, dst: &Obj) -> Mor {
        match src.instance() {
            InstanceId::VectQ => {
                let m = self.ranked_matrix(dst.gens(), src.gens());
                Mor::from_rat(src, dst, m).expect("vector space map")
            }
            InstanceId::FiltQ => {
                let (ps, ks) = adapted_basis(src);
                let (pd, kd) = adapted_basis(dst);
                let mut m = self.ranked_matrix(dst.gens(), src.gens());
                for i in kd..dst.gens() {
                    for j in 0..ks {
                        m.set(i, j, Rational::zero());
                    }
                }
                let psi = inverse(&ps).expect("adapted basis");
                Mor::from_rat(src, dst, pd.mul(&m).mul(&psi)).expect("filtered map")
            }
            InstanceId::FgAb => {
                let (so, dord) = (src.orders(), dst.orders());
                let m = IntMatrix::from_fn(dst.gens(), src.gens(), |i, j| {
                    let step = ab_step(&dord[i], &so[j]);
                    match step {
                        Some(s) => s.mul_ref(&Integer::new(self.small())),
                        None => Integer::zero(),
                    }
                });
                Mor::from_int(src, dst, m).expect("group homomorphism")
            }
        }
    }

    /// A random automorphism with its inverse.
    pub fn automorphism(&mut self, obj: &Obj) -> (Mor, Mor) {
        let n = obj.gens();
        let m = match obj.instance() {
            InstanceId::VectQ => self.invertible_matrix(n),
            InstanceId::FiltQ => {
                let (p, k) = adapted_basis(obj);
                let a = self.invertible_matrix(k);
                let c = self.invertible_matrix(n - k);
                let b = self.small_matrix(k, n - k);
                let mut blk = RatMatrix::zeros(n, n);
                blk.paste(0, 0, &a);
                blk.paste(0, k, &b);
                blk.paste(k, k, &c);
                p.mul(&blk).mul(&inverse(&p).expect("adapted basis"))
            }
            InstanceId::FgAb => {
                let o = obj.orders();
                let mut l = IntMatrix::identity(n);
                let mut u = IntMatrix::identity(n);
                for i in 0..n {
                    for j in 0..i {
                        if let Some(s) = ab_step(&o[i], &o[j]) {
                            l.set(i, j, s.mul_ref(&Integer::new(self.small())));
                        }
                        if let Some(s) = ab_step(&o[j], &o[i]) {
                            u.set(j, i, s.mul_ref(&Integer::new(self.small())));
                        }
                    }
                }
                let signs: Vec<Integer> = (0..n)
                    .map(|_| Integer::new(if self.coin(0.3) { -1 } else { 1 }))
                    .collect();
                l.mul(&IntMatrix::diagonal(&signs)).mul(&u).to_rational()
            }
        };
        let inv = inverse(&m).expect("invertible by construction");
        let f = Mor::from_rat(obj, obj, m).expect("automorphism");
        let g = Mor::from_rat(obj, obj, inv).expect("inverse automorphism");
        debug_assert!(g.after(&f).is_identity());
        (f, g)
    }

    /// An automorphism built from `steps` elementary operations, with its inverse.
    /// Entries stay small on large objects.
    pub fn sparse_automorphism(&mut self, obj: &Obj, steps: usize) -> (Mor, Mor) {
        let n = obj.gens();
        let inst = obj.instance();
        let (p, k) = match inst {
            InstanceId::FiltQ => adapted_basis(obj),
            _ => (RatMatrix::identity(n), n),
        };
        let orders = obj.orders();
        let mut m = RatMatrix::identity(n);
        for _ in 0..steps.min(n * n) {
            let (i, j) = (self.below(n), self.below(n));
            let mut e = RatMatrix::identity(n);
            if i == j {
                let unit = match inst {
                    InstanceId::FgAb => Rational::from(-1),
                    _ => Rational::from(*self.pick(&[-1, 2])),
                };
                e.set(i, i, unit);
            } else {
                let factor = match inst {
                    InstanceId::FgAb => match ab_step(&orders[i], &orders[j]) {
                        Some(s) => {
                            Rational::from_integer(s.mul_ref(&Integer::new(*self.pick(&[-1, 1]))))
                        }
                        None => continue,
                    },
                    InstanceId::FiltQ if i >= k && j < k => continue,
                    _ => Rational::from(*self.pick(&[-1, 1])),
                };
                e.set(i, j, factor);
            }
            m = e.mul(&m);
        }
        let m = match inst {
            InstanceId::FiltQ => p.mul(&m).mul(&inverse(&p).expect("adapted basis")),
            _ => m,
        };
        let inv = inverse(&m).expect("invertible by construction");
        let f = Mor::from_rat(obj, obj, m).expect("automorphism");
        let g = Mor::from_rat(obj, obj, inv).expect("inverse automorphism");
        (f, g)
    }

    /// A direct sum of spheres and disks supported in `w`, at most `budget` generators.
    pub fn cell_sum(
        &mut self,
        instance: InstanceId,
        budget: usize,
        w: Window,
        projective: bool,
    ) -> Complex {
        let mut parts = Vec::new();
        let mut left = budget;
        while left > 0 && parts.len() < 4 {
            let use_disk = w.hi > w.lo && left >= 2 && self.coin(0.5);
            let e = self.nonzero_object(
                instance,
                if use_disk { left / 2 } else { left }.min(3),
                projective,
            );
            if use_disk {
                let n = self.range(w.lo + 1, w.hi);
                parts.push(disk(n, &e));
                left -= 2 * e.gens();
            } else {
                let n = self.range(w.lo, w.hi);
                parts.push(sphere(n, &e));
                left -= e.gens();
            }
            if self.coin(0.3) {
                break;
            }
        }
        if parts.is_empty() {
            return Complex::zero(instance);
        }
        direct_sum_complexes(instance, &parts).complex
    }

    /// `φ_{n−1} d_n φ_n^{−1}` for random degreewise automorphisms `φ`.
    pub fn conjugate(&mut self, x: &Complex) -> Complex {
        self.conjugate_with_iso(x).0
    }

    /// The conjugated complex and the isomorphism `x → conjugate`.
    pub fn conjugate_with_iso(&mut self, x: &Complex) -> (Complex, ChainMap) {
        if x.is_empty_support() {
            return (x.clone(), ChainMap::identity(x));
        }
        let autos: Vec<(Mor, Mor)> = x.degrees().map(|n| self.automorphism(x.obj(n))).collect();
        let at = |n: i64| &autos[(n - x.lo()) as usize];
        let y = Complex::from_fn(x.instance(), x.lo(), x.objects().to_vec(), |n| {
            at(n - 1).0.after(&x.d(n)).after(&at(n).1)
        })
        .expect("conjugate of a complex");
        let iso = ChainMap::from_fn(x, &y, |n| {
            if n < x.lo() || n > x.hi() {
                Mor::zero(x.obj(n), y.obj(n))
            } else {
                at(n).0.clone()
            }
        })
        .expect("conjugating isomorphism");
        (y, iso)
    }

    /// A random complex in `w` with at most `budget` generators.
    pub fn complex(&mut self, instance: InstanceId, budget: usize, w: Window) -> Complex {
        self.complex_with(instance, budget, w, false, 2)
    }

    pub fn complex_with(
        &mut self,
        instance: InstanceId,
        budget: usize,
        w: Window,
        projective: bool,
        depth: usize,
    ) -> Complex {
        if budget == 0 {
            return Complex::zero(instance);
        }
        let base = if depth > 0 && budget >= 2 && self.coin(0.6) {
            let bx = self.upto(budget / 2);
            let x = self.cell_sum(instance, bx, w.down(), projective);
            let y = self.complex_with(instance, budget - bx, w, projective, depth - 1);
            let f = self.chain_map(&x, &y);
            cone(&f).complex
        } else {
            self.cell_sum(instance, budget, w, projective)
        };
        self.conjugate(&base.trimmed())
    }

    /// A random acyclic complex.
    pub fn acyclic(&mut self, instance: InstanceId, budget: usize, w: Window) -> Complex {
        let k = if instance == InstanceId::FgAb {
            self.below(3)
        } else {
            self.below(2)
        };
        let c = match k {
            0 => self.contractible(instance, budget, w),
            1 => {
                let parts: Vec<Complex> = (0..1 + self.below(2))
                    .filter(|_| w.hi > w.lo)
                    .map(|_| {
                        let e = self.nonzero_object(instance, (budget / 2).clamp(1, 2), false);
                        disk(self.range(w.lo + 1, w.hi), &e)
                    })
                    .collect();
                direct_sum_complexes(instance, &parts).complex
            }
            _ => {
                let x = self.complex(instance, budget / 2, w.inner());
                match resolve_complex(&x) {
                    Ok(r) => cone(&r.map).complex,
                    Err(_) => cone(&ChainMap::identity(&x)).complex,
                }
            }
        };
        self.conjugate(&c.trimmed())
    }

    /// `cone(id)` of a random complex, conjugated: a split exact complex.
    pub fn contractible(&mut self, instance: InstanceId, budget: usize, w: Window) -> Complex {
        self.contractible_with(instance, budget, w, false)
    }

    pub fn contractible_with(
        &mut self,
        instance: InstanceId,
        budget: usize,
        w: Window,
        projective: bool,
    ) -> Complex {
        let x = self.complex_with(instance, budget / 2, w.inner(), projective, 1);
        let c = cone(&ChainMap::identity(&x)).complex.trimmed();
        self.conjugate(&c)
    }

    /// A random degree-0 cycle of `Hom(x, y)`, i.e. a random chain map.
    pub fn chain_map(&mut self, x: &Complex, y: &Complex) -> ChainMap {
        let h = hom_complex(x, y).expect("same instance");
        let (z, inc) = cycles(&h.complex, 0);
        let u = Obj::unit(h.complex.instance());
        let e = inc.after(&self.mor(&u, &z));
        family_map(x, y, &h.family(0, &e))
    }

    /// `dD + Dd` for a random `D ∈ Hom(x, y)_1`.
    pub fn null_homotopic_map(&mut self, x: &Complex, y: &Complex) -> ChainMap {
        let h = hom_complex(x, y).expect("same instance");
        let c = &h.complex;
        let u = Obj::unit(c.instance());
        let e = c.d(1).after(&self.mor(&u, c.obj(1)));
        family_map(x, y, &h.family(0, &e))
    }

    /// A quasi-isomorphism out of `x`, or into `x` when `into` is set.
    pub fn quasi_iso(&mut self, x: &Complex, w: Window, into: bool) -> ChainMap {
        let inst = x.instance();
        let kind = self.below(if inst == InstanceId::FgAb && into {
            4
        } else {
            3
        });
        let f = match kind {
            0 => {
                let (_, iso) = self.conjugate_with_iso(x);
                let p = self.null_homotopic_map(x, iso.dst());
                if into {
                    let inv = ChainMap::from_fn(iso.dst(), x, |n| {
                        hocat::excat::two_sided_inverse(&iso.comp(n)).expect("degreewise iso")
                    })
                    .expect("inverse chain isomorphism");
                    let q = self.null_homotopic_map(iso.dst(), x);
                    inv.add(&q)
                } else {
                    iso.add(&p)
                }
            }
            1 | 2 => {
                let c = self.acyclic(inst, 3, w);
                let c = if kind == 2 || c.is_empty_support() {
                    self.contractible(inst, 4, w)
                } else {
                    c
                };
                let s = direct_sum_complexes(inst, &[x.clone(), c.clone()]);
                let sum = &s.complex;
                if into {
                    let p = self.null_homotopic_map(sum, x);
                    s.proj[0].add(&p)
                } else {
                    let p = self.null_homotopic_map(x, sum);
                    s.inj[0].add(&p)
                }
            }
            _ => {
                let r = resolve_complex(x).expect("resolutions exist");
                r.map
            }
        };
        f
    }

    /// A cofibration out of `a`: `τ: a → cone(g)` for `g: P → a` with `P` projective.
    pub fn cofibration(&mut self, a: &Complex, budget: usize, w: Window) -> ChainMap {
        let p = self.complex_with(a.instance(), budget, w.down(), true, 1);
        let g = self.chain_map(&p, a);
        let c = cone(&g);
        let (_, iso) = self.conjugate_with_iso(&c.complex);
        iso.after(&c.tau)
    }

    /// A degreewise split epimorphism onto `w[−1]`: `π: cone(g) → w[−1]` for `g: w → b`.
    pub fn fibration_onto(&mut self, wx: &Complex, b: &Complex) -> ChainMap {
        let g = self.chain_map(wx, b);
        cone(&g).pi
    }

    /// A degreewise split short exact sequence `b → cone(g) → w[−1]`.
    pub fn split_ses(&mut self, b: &Complex, wx: &Complex) -> (ChainMap, ChainMap) {
        let g = self.chain_map(wx, b);
        let c = cone(&g);
        (c.tau, c.pi)
    }
}

/// `W → ambient` basis matrix `[W | complement]` and `dim W`.
fn adapted_basis(obj: &Obj) -> (RatMatrix, usize) {
    let w = obj.sub_basis().expect("filtered object");
    (w.hstack(&complement_basis(w)), w.cols())
}

/// Smallest admissible entry step for a map from a generator of order `src` to one of
/// order `dst` (order zero meaning free), or `None` when only zero is allowed.
fn ab_step(dst: &Integer, src: &Integer) -> Option<Integer> {
    match (dst.is_zero(), src.is_zero()) {
        (_, true) => Some(Integer::one()),
        (true, false) => None,
        (false, false) => Some(dst.div_exact(&dst.gcd(src))),
    }
}

fn family_map(x: &Complex, y: &Complex, fam: &[(i64, Mor)]) -> ChainMap {
    ChainMap::from_fn(x, y, |n| {
        fam.iter()
            .find(|(i, _)| *i == n)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(|| Mor::zero(x.obj(n), y.obj(n)))
    })
    .expect("hom cycles are chain maps")
}

#[cfg(test)]
mod tests {
    use super::*;
    use hocat::chain::is_quasi_iso;

    #[test]
    fn deterministic() {
        for inst in InstanceId::ALL {
            let w = Window { lo: 0, hi: 2 };
            let a = Gen::new(5).complex(inst, 6, w);
            let b = Gen::new(5).complex(inst, 6, w);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn zero_budget() {
        let x = Gen::new(1).complex(InstanceId::FgAb, 0, Window { lo: 0, hi: 2 });
        assert!(x.is_zero());
    }

    #[test]
    fn generated_values_are_valid() {
        for inst in InstanceId::ALL {
            let mut g = Gen::new(11);
            let w = Window { lo: -1, hi: 2 };
            for _ in 0..15 {
                let x = g.complex(inst, 6, w);
                assert!(x.total_size() <= 12);
                let y = g.complex(inst, 5, w);
                let f = g.chain_map(&x, &y);
                assert!(f.is_valid());
                let into = g.coin(0.5);
                let q = g.quasi_iso(&x, w, into);
                assert!(is_quasi_iso(&q), "{inst} {q:?}");
                let o = g.object(inst, 3);
                let (a, b) = g.automorphism(&o);
                assert!(a.after(&b).is_identity());
            }
        }
    }
}
