//! Cell attachment: grows `X → M → Y` one projective summand at a time.

use crate::chain::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::excat::{
    direct_sum_in, factor_through_post, is_admissible_epi, kernel, projective_cover, Mor, Obj,
};

/// A factorization in progress: `left: X → M`, `right: M → Y`.
pub(crate) struct CellBuilder {
    pub x: Complex,
    pub y: Complex,
    pub m: Complex,
    pub left: ChainMap,
    pub right: ChainMap,
    pub cells: usize,
    pub budget: usize,
}

impl CellBuilder {
    pub fn new(f: &ChainMap, budget: usize) -> CellBuilder {
        CellBuilder {
            x: f.src().clone(),
            y: f.dst().clone(),
            m: f.src().clone(),
            left: ChainMap::identity(f.src()),
            right: f.clone(),
            cells: 0,
            budget,
        }
    }

    /// Adds `P` in degree `n` with `d|_P = α: P → M_{n−1}` and `right|_P = β: P → Y_n`.
    /// Requires `d α = 0` and `d^Y β = right_{n−1} α`.
    /// Returns the inclusion `P → M_n`.
    pub fn attach(&mut self, n: i64, alpha: &Mor, beta: &Mor) -> Result<Mor> {
        let p = alpha.src().clone();
        if p.is_zero() {
            return Ok(Mor::zero(&p, self.m.obj(n)));
        }
        self.cells += p.size();
        if self.cells > self.budget {
            return Err(Error::CellBudget(self.budget));
        }
        debug_assert!(self.m.d(n - 1).after(alpha).is_zero());
        debug_assert_eq!(self.y.d(n).after(beta), self.right.comp(n - 1).after(alpha));
        let inst = self.m.instance();
        let (lo, hi) = if self.m.is_empty_support() {
            (n - 1, n)
        } else {
            ((n - 1).min(self.m.lo()), n.max(self.m.hi()))
        };
        let old = self.m.restrict(lo, hi);
        let s = direct_sum_in(inst, &[old.obj(n).clone(), p.clone()]);
        let objects: Vec<Obj> = (lo..=hi)
            .map(|k| {
                if k == n {
                    s.obj.clone()
                } else {
                    old.obj(k).clone()
                }
            })
            .collect();
        let diffs: Vec<Mor> = (lo + 1..=hi)
            .map(|k| {
                if k == n {
                    s.copair(old.obj(n - 1), &[old.d(n), alpha.clone()])
                } else if k == n + 1 {
                    s.inj[0].after(&old.d(n + 1))
                } else {
                    old.d(k)
                }
            })
            .collect();
        let m = Complex::new(inst, lo, objects, diffs)?;
        let (x, y) = (&self.x, &self.y);
        let (left, right) = (&self.left, &self.right);
        let new_left = ChainMap::from_fn(x, &m, |k| {
            if k == n {
                s.inj[0].after(&left.comp(k))
            } else {
                left.comp(k)
            }
        })?;
        let new_right = ChainMap::from_fn(&m, y, |k| {
            if k == n {
                s.copair(y.obj(n), &[right.comp(n), beta.clone()])
            } else {
                right.comp(k)
            }
        })?;
        self.m = m;
        self.left = new_left;
        self.right = new_right;
        Ok(s.inj[1].clone())
    }

    /// A sphere cell in degree `n` mapping onto the cycles `Z_n Y`.
    pub fn attach_cycle_cover(&mut self, n: i64) -> Result<()> {
        let (zobj, z) = kernel(&self.y.d(n));
        if zobj.is_zero() {
            return Ok(());
        }
        let (p, c) = projective_cover(&zobj);
        let alpha = Mor::zero(&p, self.m.obj(n - 1));
        self.attach(n, &alpha, &z.after(&c)).map(|_| ())
    }

    /// A disk `D^n(P)` with `P ↠ Y_n`.
    pub fn attach_disk_cover(&mut self, n: i64) -> Result<()> {
        let yn = self.y.obj(n).clone();
        if yn.is_zero() {
            return Ok(());
        }
        let (p, c) = projective_cover(&yn);
        let lower = Mor::zero(&p, self.m.obj(n - 2));
        let inc = self.attach(n - 1, &lower, &self.y.d(n).after(&c))?;
        self.attach(n, &inc, &c).map(|_| ())
    }

    /// Restriction of `right` to cycles, `Z_n M → Z_n Y`, is an admissible epic.
    pub fn cycles_onto(&self, n: i64) -> bool {
        let (_, zm) = kernel(&self.m.d(n));
        let (_, zy) = kernel(&self.y.d(n));
        let r = self.right.comp(n).after(&zm);
        let onto = factor_through_post(&zy, &r).expect("chain maps preserve cycles");
        is_admissible_epi(&onto)
    }

    pub fn right_epi(&self, n: i64) -> bool {
        is_admissible_epi(&self.right.comp(n))
    }

    /// `K = ker(right)` near degree `n`: the inclusion `K_n → M_n`, the cycles
    /// `Z_n K → K_n`, and `K_{n+1} → Z_n K`.
    pub fn kernel_cycles(&self, n: i64) -> (Mor, Mor, Mor) {
        let (_, kn) = kernel(&self.right.comp(n));
        let (_, kn1) = kernel(&self.right.comp(n + 1));
        let (_, km1) = kernel(&self.right.comp(n - 1));
        let dk_n = factor_through_post(&km1, &self.m.d(n).after(&kn)).expect("kernel complex");
        let dk_n1 = factor_through_post(&kn, &self.m.d(n + 1).after(&kn1)).expect("kernel complex");
        let (_, zk) = kernel(&dk_n);
        let onto = factor_through_post(&zk, &dk_n1).expect("boundaries are cycles");
        (kn, zk, onto)
    }

    /// Makes `K_{n+1} → Z_n K` an admissible epic by attaching a cover of `Z_n K`
    /// in degree `n + 1`. Returns whether anything was attached.
    pub fn kill_kernel_cycles(&mut self, n: i64) -> Result<bool> {
        let (kn, zk, onto) = self.kernel_cycles(n);
        if is_admissible_epi(&onto) {
            return Ok(false);
        }
        let (p, c) = projective_cover(zk.src());
        let alpha = kn.after(&zk).after(&c);
        let beta = Mor::zero(&p, self.y.obj(n + 1));
        self.attach(n + 1, &alpha, &beta)?;
        Ok(true)
    }
}
