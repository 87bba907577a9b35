use super::fgab::normalize_orders;
use super::obj::{InstanceId, Mor, Obj};
use crate::error::{Error, Result};
use crate::exactlin::{IntMatrix, Integer, RatMatrix, Scalar};

/// A finite biproduct with its structure maps.
#[derive(Clone, Debug)]
pub struct Biproduct {
    pub obj: Obj,
    pub summands: Vec<Obj>,
    pub inj: Vec<Mor>,
    pub proj: Vec<Mor>,
    /// Coordinates of the sum are the concatenated coordinates of the summands.
    plain: bool,
}

impl Biproduct {
    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn offset(&self, k: usize) -> usize {
        self.summands[..k].iter().map(Obj::gens).sum()
    }

    /// The morphism `self → dst` whose `(i, j)` block `summand_j → dst.summand_i` is
    /// `block(i, j)`; `None` means zero.
    pub fn block_mor(&self, dst: &Biproduct, block: impl Fn(usize, usize) -> Option<Mor>) -> Mor {
        let inst = self.obj.instance();
        if self.plain && dst.plain {
            return match inst {
                InstanceId::FgAb => {
                    let mut m = IntMatrix::zeros(dst.obj.gens(), self.obj.gens());
                    for i in 0..dst.len() {
                        for j in 0..self.len() {
                            if let Some(b) = block(i, j) {
                                m.paste(dst.offset(i), self.offset(j), b.int());
                            }
                        }
                    }
                    Mor::raw_int(&self.obj, &dst.obj, m)
                }
                _ => {
                    let mut m = RatMatrix::zeros(dst.obj.gens(), self.obj.gens());
                    for i in 0..dst.len() {
                        for j in 0..self.len() {
                            if let Some(b) = block(i, j) {
                                m.paste(dst.offset(i), self.offset(j), b.rat_ref());
                            }
                        }
                    }
                    Mor::raw_rat(&self.obj, &dst.obj, m)
                }
            };
        }
        let mut acc = Mor::zero(&self.obj, &dst.obj);
        for i in 0..dst.len() {
            for j in 0..self.len() {
                if let Some(b) = block(i, j) {
                    acc = acc.add(&dst.inj[i].after(&b).after(&self.proj[j]));
                }
            }
        }
        acc
    }

    /// `(f_j)`: the map out of the sum restricting to `f_j` on summand `j`.
    pub fn copair(&self, target: &Obj, maps: &[Mor]) -> Mor {
        let t = direct_sum_in(self.obj.instance(), std::slice::from_ref(target));
        let m = self.block_mor(&t, |_, j| Some(maps[j].clone()));
        t.proj[0].after(&m)
    }

    /// `(f_i)`: the map into the sum with components `f_i`.
    pub fn pair(&self, source: &Obj, maps: &[Mor]) -> Mor {
        let s = direct_sum_in(self.obj.instance(), std::slice::from_ref(source));
        let m = s.block_mor(self, |i, _| Some(maps[i].clone()));
        m.after(&s.inj[0])
    }
}

pub fn direct_sum(a: &Obj, b: &Obj) -> Result<Biproduct> {
    a.same_instance(b)?;
    Ok(direct_sum_in(a.instance(), &[a.clone(), b.clone()]))
}

pub fn direct_sum_many(instance: InstanceId, objs: &[Obj]) -> Result<Biproduct> {
    if let Some(o) = objs.iter().find(|o| o.instance() != instance) {
        return Err(Error::InstanceMismatch(format!(
            "{} in a {instance} sum",
            o.instance()
        )));
    }
    Ok(direct_sum_in(instance, objs))
}

/// Unchecked variant for internal use; all summands must lie in `instance`.
pub fn direct_sum_in(instance: InstanceId, objs: &[Obj]) -> Biproduct {
    let total: usize = objs.iter().map(Obj::gens).sum();
    match instance {
        InstanceId::VectQ | InstanceId::FiltQ => {
            let obj = if instance == InstanceId::VectQ {
                Obj::vect(total)
            } else {
                let subs: Vec<RatMatrix> = objs
                    .iter()
                    .map(|o| o.sub_basis().unwrap().clone())
                    .collect();
                Obj::filt(total, &RatMatrix::block_diag(&subs)).unwrap()
            };
            let mut inj = Vec::new();
            let mut proj = Vec::new();
            let mut off = 0;
            for o in objs {
                let n = o.gens();
                let e = RatMatrix::from_fn(total, n, |i, j| {
                    if i == off + j {
                        crate::exactlin::Rational::one()
                    } else {
                        crate::exactlin::Rational::zero()
                    }
                });
                proj.push(Mor::raw_rat(&obj, o, e.transpose()));
                inj.push(Mor::raw_rat(o, &obj, e));
                off += n;
            }
            Biproduct {
                obj,
                summands: objs.to_vec(),
                inj,
                proj,
                plain: true,
            }
        }
        InstanceId::FgAb => {
            let orders: Vec<Integer> = objs.iter().flat_map(Obj::orders).collect();
            let p = normalize_orders(&orders);
            let plain = p.to_normal.is_identity();
            let mut inj = Vec::new();
            let mut proj = Vec::new();
            let mut off = 0;
            for o in objs {
                let n = o.gens();
                let e = IntMatrix::from_fn(total, n, |i, j| {
                    if i == off + j {
                        Integer::one()
                    } else {
                        Integer::zero()
                    }
                });
                inj.push(Mor::raw_int(o, &p.obj, p.to_normal.mul(&e)));
                proj.push(Mor::raw_int(&p.obj, o, e.transpose().mul(&p.from_normal)));
                off += n;
            }
            Biproduct {
                obj: p.obj,
                summands: objs.to_vec(),
                inj,
                proj,
                plain,
            }
        }
    }
}

/// The sum `f ⊕ g` between the given biproducts.
pub fn sum_of_maps(src: &Biproduct, dst: &Biproduct, maps: &[Mor]) -> Mor {
    src.block_mor(
        dst,
        |i, j| if i == j { Some(maps[i].clone()) } else { None },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn biproduct_identities(b: &Biproduct) {
        let mut sum = Mor::zero(&b.obj, &b.obj);
        for k in 0..b.len() {
            for l in 0..b.len() {
                let c = b.proj[k].after(&b.inj[l]);
                if k == l {
                    assert!(c.is_identity(), "proj {k} inj {k} = {c}");
                } else {
                    assert!(c.is_zero());
                }
            }
            sum = sum.add(&b.inj[k].after(&b.proj[k]));
        }
        assert!(sum.is_identity());
    }

    #[test]
    fn sums_in_each_instance() {
        let b = direct_sum(&Obj::vect(2), &Obj::vect(3)).unwrap();
        assert_eq!(b.obj, Obj::vect(5));
        biproduct_identities(&b);
        let b = direct_sum(&Obj::z_mod(2), &Obj::z_mod(4)).unwrap();
        assert_eq!(b.obj, Obj::ab(0, &[2, 4]).unwrap());
        biproduct_identities(&b);
        let b = direct_sum(&Obj::z_mod(2), &Obj::z_mod(3)).unwrap();
        assert_eq!(b.obj, Obj::z_mod(6));
        biproduct_identities(&b);
        let b = direct_sum(&Obj::z_mod(4), &Obj::ab(1, &[2]).unwrap()).unwrap();
        biproduct_identities(&b);
        let b = direct_sum(&Obj::p0(), &Obj::p1()).unwrap();
        assert_eq!(b.obj.gens(), 2);
        assert_eq!(b.obj.sub_dim(), 1);
        biproduct_identities(&b);
        assert!(direct_sum(&Obj::p0(), &Obj::vect(1)).is_err());
    }

    #[test]
    fn block_maps_agree_with_composites() {
        let s = direct_sum_in(InstanceId::FgAb, &[Obj::z_mod(3), Obj::z()]);
        let t = direct_sum_in(InstanceId::FgAb, &[Obj::z_mod(2), Obj::z_mod(6)]);
        let f = Mor::from_i64(&Obj::z(), &Obj::z_mod(2), &[&[1]]).unwrap();
        let g = Mor::from_i64(&Obj::z_mod(3), &Obj::z_mod(6), &[&[2]]).unwrap();
        let m = s.block_mor(&t, |i, j| match (i, j) {
            (0, 1) => Some(f.clone()),
            (1, 0) => Some(g.clone()),
            _ => None,
        });
        assert_eq!(t.proj[0].after(&m).after(&s.inj[1]), f);
        assert_eq!(t.proj[1].after(&m).after(&s.inj[0]), g);
        assert!(t.proj[0].after(&m).after(&s.inj[0]).is_zero());
    }
}
