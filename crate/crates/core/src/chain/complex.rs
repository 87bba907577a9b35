use std::fmt;

use crate::error::{Error, Result};
use crate::excat::{direct_sum_in, kernel, Biproduct, InstanceId, Mor, Obj};

/// A chain complex with finite support `[lo, hi]`; differentials lower degree by one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Complex {
    instance: InstanceId,
    lo: i64,
    objects: Vec<Obj>,
    /// `diffs[k]` is `d_{lo+k+1}`.
    diffs: Vec<Mor>,
    zero: Obj,
}

impl Complex {
    /// `objects[k]` sits in degree `lo + k`; `diffs[k]` is `d_{lo+k+1}`.
    pub fn new(
        instance: InstanceId,
        lo: i64,
        objects: Vec<Obj>,
        diffs: Vec<Mor>,
    ) -> Result<Complex> {
        if diffs.len() != objects.len().saturating_sub(1) {
            return Err(Error::Dimension(format!(
                "{} objects need {} differentials, got {}",
                objects.len(),
                objects.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for o in &objects {
            if o.instance() != instance {
                return Err(Error::InstanceMismatch(format!(
                    "{} object in a {instance} complex",
                    o.instance()
                )));
            }
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.src() != &objects[k + 1] || d.dst() != &objects[k] {
                return Err(Error::Dimension(format!(
                    "differential in degree {} has the wrong endpoints",
                    lo + k as i64 + 1
                )));
            }
        }
        for k in 1..diffs.len() {
            if !diffs[k - 1].after(&diffs[k]).is_zero() {
                return Err(Error::NotAComplex(lo + k as i64 + 1));
            }
        }
        Ok(Complex::raw(instance, lo, objects, diffs))
    }

    pub(crate) fn raw(
        instance: InstanceId,
        lo: i64,
        objects: Vec<Obj>,
        diffs: Vec<Mor>,
    ) -> Complex {
        Complex {
            instance,
            lo,
            objects,
            diffs,
            zero: Obj::zero(instance),
        }
    }

    /// Builds a complex from `d(n)` over `[lo, hi]`, validating `d² = 0`.
    pub fn from_fn(
        instance: InstanceId,
        lo: i64,
        objects: Vec<Obj>,
        d: impl Fn(i64) -> Mor,
    ) -> Result<Complex> {
        let hi = lo + objects.len() as i64 - 1;
        let diffs = (lo + 1..=hi).map(d).collect();
        Complex::new(instance, lo, objects, diffs)
    }

    pub fn zero(instance: InstanceId) -> Complex {
        Complex::raw(instance, 0, vec![], vec![])
    }

    pub fn instance(&self) -> InstanceId {
        self.instance
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// `lo − 1` for the empty complex.
    pub fn hi(&self) -> i64 {
        self.lo + self.objects.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn is_empty_support(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn obj(&self, n: i64) -> &Obj {
        if n < self.lo || n > self.hi() {
            &self.zero
        } else {
            &self.objects[(n - self.lo) as usize]
        }
    }

    /// `d_n: X_n → X_{n−1}`.
    pub fn d(&self, n: i64) -> Mor {
        if n <= self.lo || n > self.hi() {
            Mor::zero(self.obj(n), self.obj(n - 1))
        } else {
            self.diffs[(n - self.lo - 1) as usize].clone()
        }
    }

    pub fn objects(&self) -> &[Obj] {
        &self.objects
    }

    /// True when every entry is the zero object.
    pub fn is_zero(&self) -> bool {
        self.objects.iter().all(Obj::is_zero)
    }

    pub fn total_size(&self) -> usize {
        self.objects.iter().map(Obj::size).sum()
    }

    /// Same complex with zero entries at both ends removed.
    pub fn trimmed(&self) -> Complex {
        let nz: Vec<i64> = self.degrees().filter(|&n| !self.obj(n).is_zero()).collect();
        match (nz.first(), nz.last()) {
            (Some(&a), Some(&b)) => self.restrict(a, b),
            _ => Complex::zero(self.instance),
        }
    }

    /// Same differentials on the support `[lo, hi]`; entries outside become zero.
    pub fn restrict(&self, lo: i64, hi: i64) -> Complex {
        let objects: Vec<Obj> = (lo..=hi).map(|n| self.obj(n).clone()).collect();
        let diffs = (lo + 1..=hi).map(|n| self.d(n)).collect();
        Complex::raw(self.instance, lo, objects, diffs)
    }

    /// Support widened to contain `[lo, hi]`.
    pub fn widened(&self, lo: i64, hi: i64) -> Complex {
        if self.is_empty_support() {
            return self.restrict(lo, hi);
        }
        self.restrict(lo.min(self.lo), hi.max(self.hi()))
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.objects.is_empty() {
            return write!(f, "0");
        }
        for n in self.degrees().rev() {
            write!(f, "[{n}] {}", self.obj(n))?;
            if n > self.lo {
                write!(f, " --{}--> ", self.d(n))?;
            }
        }
        Ok(())
    }
}

/// A family `f_n: X_n → Y_n` commuting with the differentials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ChainMap {
    src: Complex,
    dst: Complex,
    lo: i64,
    comps: Vec<Mor>,
}

fn union_range(a: &Complex, b: &Complex) -> (i64, i64) {
    match (a.is_empty_support(), b.is_empty_support()) {
        (true, true) => (0, -1),
        (true, false) => (b.lo(), b.hi()),
        (false, true) => (a.lo(), a.hi()),
        _ => (a.lo().min(b.lo()), a.hi().max(b.hi())),
    }
}

impl ChainMap {
    /// Components are read from `f(n)` on the union of the supports.
    pub fn from_fn(src: &Complex, dst: &Complex, f: impl Fn(i64) -> Mor) -> Result<ChainMap> {
        if src.instance() != dst.instance() {
            return Err(Error::InstanceMismatch(format!(
                "{} -> {}",
                src.instance(),
                dst.instance()
            )));
        }
        let (lo, hi) = union_range(src, dst);
        let mut comps = Vec::new();
        for n in lo..=hi {
            let m = f(n);
            if m.src() != src.obj(n) || m.dst() != dst.obj(n) {
                return Err(Error::NotAChainMap(format!(
                    "component {n} has the wrong endpoints"
                )));
            }
            comps.push(m);
        }
        let c = ChainMap {
            src: src.clone(),
            dst: dst.clone(),
            lo,
            comps,
        };
        c.check()?;
        Ok(c)
    }

    pub(crate) fn raw(src: &Complex, dst: &Complex, f: impl Fn(i64) -> Mor) -> ChainMap {
        let (lo, hi) = union_range(src, dst);
        ChainMap {
            src: src.clone(),
            dst: dst.clone(),
            lo,
            comps: (lo..=hi).map(f).collect(),
        }
    }

    fn check(&self) -> Result<()> {
        let (lo, hi) = union_range(&self.src, &self.dst);
        for n in lo..=hi + 1 {
            let l = self.comp(n - 1).after(&self.src.d(n));
            let r = self.dst.d(n).after(&self.comp(n));
            if l != r {
                return Err(Error::NotAChainMap(format!(
                    "square at degree {n} does not commute"
                )));
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    pub fn identity(x: &Complex) -> ChainMap {
        ChainMap::raw(x, x, |n| Mor::identity(x.obj(n)))
    }

    pub fn zero(x: &Complex, y: &Complex) -> ChainMap {
        ChainMap::raw(x, y, |n| Mor::zero(x.obj(n), y.obj(n)))
    }

    pub fn src(&self) -> &Complex {
        &self.src
    }

    pub fn dst(&self) -> &Complex {
        &self.dst
    }

    pub fn instance(&self) -> InstanceId {
        self.src.instance()
    }

    pub fn comp(&self, n: i64) -> Mor {
        let k = n - self.lo;
        if k < 0 || k >= self.comps.len() as i64 {
            Mor::zero(self.src.obj(n), self.dst.obj(n))
        } else {
            self.comps[k as usize].clone()
        }
    }

    /// Degrees where either end is possibly nonzero.
    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        let (lo, hi) = union_range(&self.src, &self.dst);
        lo..=hi
    }

    /// `self ∘ g`.
    pub fn after(&self, g: &ChainMap) -> ChainMap {
        assert!(
            g.dst == self.src,
            "composition of non-composable chain maps"
        );
        ChainMap::raw(&g.src, &self.dst, |n| self.comp(n).after(&g.comp(n)))
    }

    pub fn add(&self, o: &ChainMap) -> ChainMap {
        assert!(self.src == o.src && self.dst == o.dst);
        ChainMap::raw(&self.src, &self.dst, |n| self.comp(n).add(&o.comp(n)))
    }

    pub fn sub(&self, o: &ChainMap) -> ChainMap {
        assert!(self.src == o.src && self.dst == o.dst);
        ChainMap::raw(&self.src, &self.dst, |n| self.comp(n).sub(&o.comp(n)))
    }

    pub fn neg(&self) -> ChainMap {
        ChainMap::raw(&self.src, &self.dst, |n| self.comp(n).neg())
    }

    pub fn is_zero(&self) -> bool {
        self.degrees().all(|n| self.comp(n).is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.dst && self.degrees().all(|n| self.comp(n).is_identity())
    }

    /// The same components re-read between complexes with the same entries.
    pub fn with_ends(&self, src: &Complex, dst: &Complex) -> Result<ChainMap> {
        ChainMap::from_fn(src, dst, |n| self.comp(n))
    }
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainMap {{ {} => {}", self.src, self.dst)?;
        for n in self.degrees() {
            write!(f, "; f{n} = {}", self.comp(n))?;
        }
        write!(f, " }}")
    }
}

/// `D_n: X_n → Y_{n+1}` with `f − g = dD + Dd`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub from: ChainMap,
    pub to: ChainMap,
    pub comps: Vec<(i64, Mor)>,
}

impl Homotopy {
    pub fn comp(&self, n: i64) -> Mor {
        self.comps
            .iter()
            .find(|(k, _)| *k == n)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(|| Mor::zero(self.from.src().obj(n), self.from.dst().obj(n + 1)))
    }

    /// Checks `f_i − g_i = D_{i−1} d_i + d_{i+1} D_i` in every degree.
    pub fn verify(&self) -> bool {
        let (x, y) = (self.from.src(), self.from.dst());
        let (lo, hi) = union_range(x, y);
        (lo..=hi).all(|i| {
            let lhs = self.from.comp(i).sub(&self.to.comp(i));
            let rhs = self
                .comp(i - 1)
                .after(&x.d(i))
                .add(&y.d(i + 1).after(&self.comp(i)));
            lhs == rhs
        })
    }
}

pub fn sphere(n: i64, e: &Obj) -> Complex {
    Complex::raw(e.instance(), n, vec![e.clone()], vec![])
}

/// `e → e` by the identity, in degrees `n` and `n − 1`.
pub fn disk(n: i64, e: &Obj) -> Complex {
    Complex::raw(
        e.instance(),
        n - 1,
        vec![e.clone(), e.clone()],
        vec![Mor::identity(e)],
    )
}

/// `(X[k])_i = X_{i+k}` with differential `(−1)^k d`.
pub fn shift(x: &Complex, k: i64) -> Complex {
    if x.is_empty_support() {
        return x.clone();
    }
    let lo = x.lo() - k;
    let objects = x.objects().to_vec();
    let diffs = (lo + 1..=x.hi() - k)
        .map(|i| x.d(i + k).signed(k))
        .collect();
    Complex::raw(x.instance(), lo, objects, diffs)
}

/// `(f[k])_i = f_{i+k}`.
pub fn shift_map(f: &ChainMap, k: i64) -> ChainMap {
    let (s, t) = (shift(f.src(), k), shift(f.dst(), k));
    ChainMap::raw(&s, &t, |i| f.comp(i + k))
}

/// Convention for the lower-left block of the cone differential. `Flipped` exists
/// only to exercise the harness with a deliberately wrong sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ConeSign {
    #[default]
    Standard,
    Flipped,
}

/// The mapping cone with its structure maps `τ: Y → cone f` and `π: cone f → X[−1]`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: Complex,
    pub tau: ChainMap,
    pub pi: ChainMap,
    /// Degreewise biproducts `X_{n−1} ⊕ Y_n`.
    pub sums: Vec<(i64, Biproduct)>,
}

impl Cone {
    pub fn sum(&self, n: i64) -> &Biproduct {
        &self
            .sums
            .iter()
            .find(|(k, _)| *k == n)
            .expect("degree in cone support")
            .1
    }
}

/// `cone_n = X_{n−1} ⊕ Y_n` with differential `[[−d^X_{n−1}, 0], [−f_{n−1}, d^Y_n]]`.
pub fn cone(f: &ChainMap) -> Cone {
    cone_with(f, ConeSign::Standard).expect("cone differential squares to zero")
}

pub fn cone_with(f: &ChainMap, sign: ConeSign) -> Result<Cone> {
    let (x, y) = (f.src(), f.dst());
    let inst = x.instance();
    let (lo, hi) = match (x.is_empty_support(), y.is_empty_support()) {
        (true, true) => (0, -1),
        (true, false) => (y.lo(), y.hi()),
        (false, true) => (x.lo() + 1, x.hi() + 1),
        _ => ((x.lo() + 1).min(y.lo()), (x.hi() + 1).max(y.hi())),
    };
    let sums: Vec<(i64, Biproduct)> = (lo..=hi)
        .map(|n| {
            (
                n,
                direct_sum_in(inst, &[x.obj(n - 1).clone(), y.obj(n).clone()]),
            )
        })
        .collect();
    let get = |n: i64| -> Biproduct {
        if n < lo || n > hi {
            direct_sum_in(inst, &[x.obj(n - 1).clone(), y.obj(n).clone()])
        } else {
            sums[(n - lo) as usize].1.clone()
        }
    };
    let lower = if sign == ConeSign::Standard { -1 } else { 1 };
    let objects: Vec<Obj> = sums.iter().map(|(_, b)| b.obj.clone()).collect();
    let diffs: Vec<Mor> = (lo + 1..=hi)
        .map(|n| {
            let (s, t) = (get(n), get(n - 1));
            s.block_mor(&t, |i, j| match (i, j) {
                (0, 0) => Some(x.d(n - 1).neg()),
                (1, 0) => Some(f.comp(n - 1).scale(lower)),
                (1, 1) => Some(y.d(n)),
                _ => None,
            })
        })
        .collect();
    let complex = Complex::new(inst, lo, objects, diffs)?;
    let xm1 = shift(x, -1);
    let tau = ChainMap::raw(y, &complex, |n| {
        if n < lo || n > hi {
            Mor::zero(y.obj(n), complex.obj(n))
        } else {
            get(n).inj[1].clone()
        }
    });
    let pi = ChainMap::raw(&complex, &xm1, |n| {
        if n < lo || n > hi {
            Mor::zero(complex.obj(n), xm1.obj(n))
        } else {
            get(n).proj[0].clone()
        }
    });
    Ok(Cone {
        complex,
        tau,
        pi,
        sums,
    })
}

/// `τ≥n X` with its inclusion into `X`.
pub fn truncate(x: &Complex, n: i64) -> (Complex, ChainMap) {
    if n > x.hi() {
        let z = Complex::zero(x.instance());
        let inc = ChainMap::zero(&z, x);
        return (z, inc);
    }
    let lo = n.max(x.lo());
    let (kobj, kinc) = kernel(&x.d(lo));
    let mut objects = vec![kobj.clone()];
    let mut diffs = Vec::new();
    for m in lo + 1..=x.hi() {
        objects.push(x.obj(m).clone());
        if m == lo + 1 {
            let dm = x.d(m);
            let through =
                crate::excat::factor_through_post(&kinc, &dm).expect("boundaries are cycles");
            diffs.push(through);
        } else {
            diffs.push(x.d(m));
        }
    }
    let t = Complex::raw(x.instance(), lo, objects, diffs);
    let inc = ChainMap::raw(&t, x, |m| {
        if m == lo {
            kinc.clone()
        } else if m > lo && m <= x.hi() {
            Mor::identity(x.obj(m))
        } else {
            Mor::zero(t.obj(m), x.obj(m))
        }
    });
    (t, inc)
}

/// `Z_n X = Ker d_n` with its inclusion.
pub fn cycles(x: &Complex, n: i64) -> (Obj, Mor) {
    kernel(&x.d(n))
}

/// Degreewise biproduct of complexes.
#[derive(Clone, Debug)]
pub struct ComplexSum {
    pub complex: Complex,
    pub inj: Vec<ChainMap>,
    pub proj: Vec<ChainMap>,
    pub sums: Vec<(i64, Biproduct)>,
}

impl ComplexSum {
    pub fn sum(&self, n: i64) -> Option<&Biproduct> {
        self.sums.iter().find(|(k, _)| *k == n).map(|(_, b)| b)
    }
}

pub fn direct_sum_complexes(instance: InstanceId, parts: &[Complex]) -> ComplexSum {
    let nonempty: Vec<&Complex> = parts.iter().filter(|c| !c.is_empty_support()).collect();
    if nonempty.is_empty() {
        let z = Complex::zero(instance);
        return ComplexSum {
            inj: parts.iter().map(|p| ChainMap::zero(p, &z)).collect(),
            proj: parts.iter().map(|p| ChainMap::zero(&z, p)).collect(),
            complex: z,
            sums: vec![],
        };
    }
    let lo = nonempty.iter().map(|c| c.lo()).min().unwrap();
    let hi = nonempty.iter().map(|c| c.hi()).max().unwrap();
    let sums: Vec<(i64, Biproduct)> = (lo..=hi)
        .map(|n| {
            let objs: Vec<Obj> = parts.iter().map(|p| p.obj(n).clone()).collect();
            (n, direct_sum_in(instance, &objs))
        })
        .collect();
    let at = |n: i64| &sums[(n - lo) as usize].1;
    let objects = sums.iter().map(|(_, b)| b.obj.clone()).collect();
    let diffs = (lo + 1..=hi)
        .map(|n| at(n).block_mor(at(n - 1), |i, j| (i == j).then(|| parts[i].d(n))))
        .collect();
    let complex = Complex::raw(instance, lo, objects, diffs);
    let inj = (0..parts.len())
        .map(|k| {
            ChainMap::raw(&parts[k], &complex, |n| {
                if n < lo || n > hi {
                    Mor::zero(parts[k].obj(n), complex.obj(n))
                } else {
                    at(n).inj[k].clone()
                }
            })
        })
        .collect();
    let proj = (0..parts.len())
        .map(|k| {
            ChainMap::raw(&complex, &parts[k], |n| {
                if n < lo || n > hi {
                    Mor::zero(complex.obj(n), parts[k].obj(n))
                } else {
                    at(n).proj[k].clone()
                }
            })
        })
        .collect();
    ComplexSum {
        complex,
        inj,
        proj,
        sums,
    }
}

/// Degreewise kernel of a chain map, with its inclusion.
pub fn kernel_complex(f: &ChainMap) -> (Complex, ChainMap) {
    let (lo, hi) = match f.degrees().into_inner() {
        (a, b) if a <= b => (a, b),
        _ => {
            return (
                Complex::zero(f.instance()),
                ChainMap::zero(&Complex::zero(f.instance()), f.src()),
            )
        }
    };
    let ks: Vec<(Obj, Mor)> = (lo..=hi).map(|n| kernel(&f.comp(n))).collect();
    let objects = ks.iter().map(|(o, _)| o.clone()).collect();
    let diffs = (lo + 1..=hi)
        .map(|n| {
            let (_, kn) = &ks[(n - lo) as usize];
            let (_, km) = &ks[(n - lo - 1) as usize];
            crate::excat::factor_through_post(km, &f.src().d(n).after(kn))
                .expect("chain maps send kernels to kernels")
        })
        .collect();
    let k = Complex::raw(f.instance(), lo, objects, diffs);
    let inc = ChainMap::raw(&k, f.src(), |n| {
        if n < lo || n > hi {
            Mor::zero(k.obj(n), f.src().obj(n))
        } else {
            ks[(n - lo) as usize].1.clone()
        }
    });
    (k, inc)
}

/// Degreewise cokernel of a chain map, with its projection.
pub fn cokernel_complex(f: &ChainMap) -> (Complex, ChainMap) {
    let (lo, hi) = match f.degrees().into_inner() {
        (a, b) if a <= b => (a, b),
        _ => {
            return (
                Complex::zero(f.instance()),
                ChainMap::zero(f.dst(), &Complex::zero(f.instance())),
            )
        }
    };
    let cs: Vec<(Obj, Mor)> = (lo..=hi)
        .map(|n| crate::excat::cokernel(&f.comp(n)))
        .collect();
    let objects = cs.iter().map(|(o, _)| o.clone()).collect();
    let diffs = (lo + 1..=hi)
        .map(|n| {
            let (_, cn) = &cs[(n - lo) as usize];
            let (_, cm) = &cs[(n - lo - 1) as usize];
            crate::excat::factor_through_pre(cn, &cm.after(&f.dst().d(n)))
                .expect("chain maps send images to images")
        })
        .collect();
    let c = Complex::raw(f.instance(), lo, objects, diffs);
    let proj = ChainMap::raw(f.dst(), &c, |n| {
        if n < lo || n > hi {
            Mor::zero(f.dst().obj(n), c.obj(n))
        } else {
            cs[(n - lo) as usize].1.clone()
        }
    });
    (c, proj)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Obj {
        Obj::vect(1)
    }

    #[test]
    fn spheres_disks_and_shift() {
        let s = sphere(0, &q());
        assert_eq!(s.obj(0), &q());
        assert!(s.obj(1).is_zero());
        let d = disk(1, &q());
        assert!(d.d(1).is_identity());
        assert_eq!(shift(&s, 1), sphere(-1, &q()));
        let dd = shift(&shift(&d, 1), -1);
        assert_eq!(dd, d);
        let d1 = shift(&d, 1);
        assert_eq!(d1.d(0), d.d(1).neg());
    }

    #[test]
    fn rejects_non_complexes() {
        let v = Obj::vect(1);
        let one = Mor::identity(&v);
        let e = Complex::new(
            InstanceId::VectQ,
            0,
            vec![v.clone(), v.clone(), v.clone()],
            vec![one.clone(), one],
        );
        assert_eq!(e.unwrap_err(), Error::NotAComplex(2));
    }

    #[test]
    fn cone_of_zero_is_a_sum() {
        let x = sphere(1, &q());
        let y = sphere(0, &q());
        let c = cone(&ChainMap::zero(&x, &y));
        assert_eq!(c.complex.obj(2), &q());
        assert_eq!(c.complex.obj(0), &q());
        assert!(c.complex.d(2).is_zero());
        assert!(c.pi.after(&c.tau).is_zero());
        assert!(c.tau.is_valid() && c.pi.is_valid());
    }

    #[test]
    fn truncation() {
        let (t, inc) = truncate(&sphere(0, &q()), 0);
        assert_eq!(t, sphere(0, &q()));
        assert!(inc.is_valid());
        let (t, _) = truncate(&disk(1, &q()), 1);
        assert!(t.obj(1).is_zero());
        let x = sphere(1, &q());
        let c = cone(&ChainMap::zero(&x, &sphere(0, &q()))).complex;
        let (t, inc) = truncate(&c, 0);
        assert_eq!(t.obj(0), &q());
        assert!(inc.is_valid());
    }

    #[test]
    fn cycles_examples() {
        assert_eq!(cycles(&sphere(0, &q()), 0).0, q());
        assert!(cycles(&disk(1, &q()), 1).0.is_zero());
        let z = Obj::z();
        let two = Mor::from_i64(&z, &z, &[&[2]]).unwrap();
        let x = Complex::new(InstanceId::FgAb, 0, vec![z.clone(), z.clone()], vec![two]).unwrap();
        assert!(cycles(&x, 1).0.is_zero());
    }
}
