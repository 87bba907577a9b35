//! Tensor products of vector spaces, groups and complexes; pushout-products;
//! probe-based flatness and purity.

use std::ops::Range;

use crate::chain::{cokernel_complex, ChainMap, Complex};
use crate::error::{Error, Result};
use crate::exactlin::{IntMatrix, Integer};
use crate::excat::fgab::normalize_orders;
use crate::excat::{
    direct_sum_in, factor_through_pre, is_admissible_mono, is_iso, is_short_exact, Biproduct,
    InstanceId, Mor, Obj, Ses,
};
use crate::model::pushout_complexes;

fn check_instance(inst: InstanceId) -> Result<()> {
    match inst {
        InstanceId::FiltQ => Err(Error::Unsupported(
            "no tensor product on filtered spaces".into(),
        )),
        _ => Ok(()),
    }
}

/// `a ⊗ b` with the change of coordinates from the generators `aᵢ ⊗ bⱼ`
/// (index `i · gens(b) + j`).
#[derive(Clone, Debug)]
pub struct TensorObj {
    pub obj: Obj,
    pub to_normal: Option<IntMatrix>,
    pub from_normal: Option<IntMatrix>,
}

pub fn tensor_presentation(a: &Obj, b: &Obj) -> Result<TensorObj> {
    a.same_instance(b)?;
    check_instance(a.instance())?;
    match (a, b) {
        (Obj::Ab { .. }, Obj::Ab { .. }) => {
            let (oa, ob) = (a.orders(), b.orders());
            let raw: Vec<Integer> = oa
                .iter()
                .flat_map(|x| ob.iter().map(move |y| x.gcd(y)))
                .collect();
            let p = normalize_orders(&raw);
            Ok(TensorObj {
                obj: p.obj,
                to_normal: Some(p.to_normal),
                from_normal: Some(p.from_normal),
            })
        }
        _ => Ok(TensorObj {
            obj: Obj::vect(a.gens() * b.gens()),
            to_normal: None,
            from_normal: None,
        }),
    }
}

pub fn tensor_objects(a: &Obj, b: &Obj) -> Result<Obj> {
    Ok(tensor_presentation(a, b)?.obj)
}

/// `f ⊗ g: a ⊗ b → a' ⊗ b'`.
pub fn tensor_maps(f: &Mor, g: &Mor) -> Result<Mor> {
    let s = tensor_presentation(f.src(), g.src())?;
    let t = tensor_presentation(f.dst(), g.dst())?;
    Ok(tensor_maps_in(f, g, &s, &t))
}

fn tensor_maps_in(f: &Mor, g: &Mor, s: &TensorObj, t: &TensorObj) -> Mor {
    match f.instance() {
        InstanceId::FgAb => {
            let k = f.int().kron(g.int());
            let m = t
                .to_normal
                .as_ref()
                .unwrap()
                .mul(&k)
                .mul(s.from_normal.as_ref().unwrap());
            Mor::raw_int(&s.obj, &t.obj, m)
        }
        _ => Mor::raw_rat(&s.obj, &t.obj, f.rat_ref().kron(g.rat_ref())),
    }
}

/// `X ⊗ Y` with `d|_{X_i ⊗ Y_j} = d ⊗ 1 + (−1)^i 1 ⊗ d`; summands ordered by `i`.
#[derive(Clone, Debug)]
pub struct TensorWitness {
    pub factors: (Complex, Complex),
    pub product: Complex,
    /// Per degree `n`: the pairs `(i, j)` with `i + j = n` and their biproduct.
    pub blocks: Vec<(i64, Vec<(i64, i64)>, Biproduct, Vec<TensorObj>)>,
}

impl TensorWitness {
    fn degree(&self, n: i64) -> Option<&(i64, Vec<(i64, i64)>, Biproduct, Vec<TensorObj>)> {
        self.blocks.iter().find(|b| b.0 == n)
    }

    /// Coordinates of `X_i ⊗ Y_j` inside the degree `i + j` entry.
    pub fn summand_index(&self, i: i64, j: i64) -> Option<Range<usize>> {
        let (_, pairs, s, _) = self.degree(i + j)?;
        let k = pairs.iter().position(|&p| p == (i, j))?;
        let off = s.offset(k);
        Some(off..off + s.summands[k].gens())
    }
}

fn pairs(x: &Complex, y: &Complex, n: i64) -> Vec<(i64, i64)> {
    x.degrees()
        .filter(|&i| y.degrees().contains(&(n - i)))
        .map(|i| (i, n - i))
        .collect()
}

pub fn tensor_complexes(x: &Complex, y: &Complex) -> Result<TensorWitness> {
    if x.instance() != y.instance() {
        return Err(Error::InstanceMismatch(format!(
            "{} ⊗ {}",
            x.instance(),
            y.instance()
        )));
    }
    let inst = x.instance();
    check_instance(inst)?;
    if x.is_empty_support() || y.is_empty_support() {
        return Ok(TensorWitness {
            factors: (x.clone(), y.clone()),
            product: Complex::zero(inst),
            blocks: vec![],
        });
    }
    let (lo, hi) = (x.lo() + y.lo(), x.hi() + y.hi());
    let mut blocks = Vec::new();
    for n in lo..=hi {
        let ps = pairs(x, y, n);
        let tens: Vec<TensorObj> = ps
            .iter()
            .map(|&(i, j)| tensor_presentation(x.obj(i), y.obj(j)))
            .collect::<Result<_>>()?;
        let objs: Vec<Obj> = tens.iter().map(|t| t.obj.clone()).collect();
        blocks.push((n, ps, direct_sum_in(inst, &objs), tens));
    }
    let objects = blocks.iter().map(|b| b.2.obj.clone()).collect();
    let diffs = (lo + 1..=hi)
        .map(|n| {
            let (_, sp, ss, st) = &blocks[(n - lo) as usize];
            let (_, dp, ds, dt) = &blocks[(n - lo - 1) as usize];
            ss.block_mor(ds, |a, b| {
                let (i, j) = sp[b];
                let (k, l) = dp[a];
                if (k, l) == (i - 1, j) {
                    Some(tensor_maps_in(
                        &x.d(i),
                        &Mor::identity(y.obj(j)),
                        &st[b],
                        &dt[a],
                    ))
                } else if (k, l) == (i, j - 1) {
                    let m = tensor_maps_in(&Mor::identity(x.obj(i)), &y.d(j), &st[b], &dt[a]);
                    Some(m.signed(i))
                } else {
                    None
                }
            })
        })
        .collect();
    let product = Complex::new(inst, lo, objects, diffs)?;
    Ok(TensorWitness {
        factors: (x.clone(), y.clone()),
        product,
        blocks,
    })
}

/// `f ⊗ g` between tensor products, blockwise `f_i ⊗ g_j`.
pub fn tensor_chain_maps(
    f: &ChainMap,
    g: &ChainMap,
    src: &TensorWitness,
    dst: &TensorWitness,
) -> Result<ChainMap> {
    let ok = src.factors.0 == *f.src()
        && src.factors.1 == *g.src()
        && dst.factors.0 == *f.dst()
        && dst.factors.1 == *g.dst();
    if !ok {
        return Err(Error::Dimension(
            "tensor witnesses do not match the maps".into(),
        ));
    }
    ChainMap::from_fn(&src.product, &dst.product, |n| {
        match (src.degree(n), dst.degree(n)) {
            (Some((_, sp, ss, st)), Some((_, dp, ds, dt))) => ss.block_mor(ds, |a, b| {
                (sp[b] == dp[a]).then(|| {
                    let (i, j) = sp[b];
                    tensor_maps_in(&f.comp(i), &g.comp(j), &st[b], &dt[a])
                })
            }),
            _ => Mor::zero(src.product.obj(n), dst.product.obj(n)),
        }
    })
}

/// `i □ j: (A ⊗ B') ⊔_{A ⊗ A'} (B ⊗ A') → B ⊗ B'`.
#[derive(Clone, Debug)]
pub struct PushoutProduct {
    pub map: ChainMap,
    /// The induced `coker(i □ j) → coker(i) ⊗ coker(j)`, an isomorphism.
    pub cokernel_iso: ChainMap,
}

pub fn pushout_product(i: &ChainMap, j: &ChainMap) -> Result<PushoutProduct> {
    check_instance(i.instance())?;
    let monic = |m: &ChainMap| m.degrees().all(|n| is_admissible_mono(&m.comp(n)));
    if !monic(i) || !monic(j) {
        return Err(Error::Precondition(
            "pushout-products of degreewise admissible monics only".into(),
        ));
    }
    let (a, b) = (i.src(), i.dst());
    let (a2, b2) = (j.src(), j.dst());
    let t_aa = tensor_complexes(a, a2)?;
    let t_ab = tensor_complexes(a, b2)?;
    let t_ba = tensor_complexes(b, a2)?;
    let t_bb = tensor_complexes(b, b2)?;
    let id = ChainMap::identity;
    let i_a2 = tensor_chain_maps(i, &id(a2), &t_aa, &t_ba)?;
    let a_j = tensor_chain_maps(&id(a), j, &t_aa, &t_ab)?;
    let i_b2 = tensor_chain_maps(i, &id(b2), &t_ab, &t_bb)?;
    let b_j = tensor_chain_maps(&id(b), j, &t_ba, &t_bb)?;
    let po = pushout_complexes(&i_a2, &a_j)?;
    let out = b_j.after(&po.sum.proj[0]).add(&i_b2.after(&po.sum.proj[1]));
    let map = ChainMap::from_fn(&po.complex, &t_bb.product, |n| {
        factor_through_pre(&po.quotient.comp(n), &out.comp(n)).expect("the square commutes")
    })?;
    let (c, pc) = cokernel_complex(i);
    let (c2, pc2) = cokernel_complex(j);
    let t_cc = tensor_complexes(&c, &c2)?;
    let pp = tensor_chain_maps(&pc, &pc2, &t_bb, &t_cc)?;
    let (k, pk) = cokernel_complex(&map);
    let cokernel_iso = ChainMap::from_fn(&k, &t_cc.product, |n| {
        factor_through_pre(&pk.comp(n), &pp.comp(n)).expect("the box lands in the kernel")
    })?;
    if !monic(&map)
        || !cokernel_iso
            .degrees()
            .all(|n| is_iso(&cokernel_iso.comp(n)))
    {
        return Err(Error::Invariant(
            "pushout-product is not a monic with cokernel C ⊗ C'".into(),
        ));
    }
    Ok(PushoutProduct { map, cokernel_iso })
}

/// `0 → Z → Z → Z/d → 0` for each `d`, or a split sequence of vector spaces.
pub fn default_flat_probes(instance: InstanceId) -> Vec<Ses> {
    match instance {
        InstanceId::FgAb => [2, 3, 4, 6]
            .iter()
            .map(|&d| {
                let z = Obj::z();
                let i = Mor::from_i64(&z, &z, &[&[d]]).unwrap();
                let p = Mor::from_i64(&z, &Obj::z_mod(d), &[&[1]]).unwrap();
                Ses::new(i, p).unwrap()
            })
            .collect(),
        _ => {
            let (q, q2) = (Obj::vect(1), Obj::vect(2));
            let i = Mor::from_i64(&q, &q2, &[&[1], &[1]]).unwrap();
            let p = Mor::from_i64(&q2, &q, &[&[1, -1]]).unwrap();
            vec![Ses::new(i, p).unwrap()]
        }
    }
}

/// Cyclic probe objects for purity.
pub fn default_pure_probes(instance: InstanceId) -> Vec<Obj> {
    match instance {
        InstanceId::FgAb => vec![
            Obj::z(),
            Obj::z_mod(2),
            Obj::z_mod(3),
            Obj::z_mod(4),
            Obj::z_mod(6),
        ],
        _ => vec![Obj::vect(1)],
    }
}

/// Tensoring each probe sequence with `f` keeps it short exact.
pub fn is_flat_probe(f: &Obj, probes: &[Ses]) -> Result<bool> {
    check_instance(f.instance())?;
    let id = Mor::identity(f);
    for s in probes {
        let i = tensor_maps(&s.left, &id)?;
        let p = tensor_maps(&s.right, &id)?;
        if !is_short_exact(&i, &p) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `i ⊗ P` stays an admissible monic for each probe `P`.
pub fn is_pure_probe(i: &Mor, probes: &[Obj]) -> Result<bool> {
    check_instance(i.instance())?;
    for p in probes {
        if !is_admissible_mono(&tensor_maps(i, &Mor::identity(p))?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Degreewise purity of a chain map.
pub fn is_pure_probe_complex(i: &ChainMap, probes: &[Obj]) -> Result<bool> {
    for n in i.degrees() {
        if !is_pure_probe(&i.comp(n), probes)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{disk, is_acyclic, sphere};
    use crate::model::{classify_map_model, generating_cofibrations, ModelFlavor};

    #[test]
    fn object_tensors() {
        assert_eq!(
            tensor_objects(&Obj::vect(2), &Obj::vect(3)).unwrap(),
            Obj::vect(6)
        );
        assert_eq!(
            tensor_objects(&Obj::z_mod(4), &Obj::z_mod(6)).unwrap(),
            Obj::z_mod(2)
        );
        let x = Obj::ab(2, &[2, 6]).unwrap();
        assert_eq!(tensor_objects(&Obj::z(), &x).unwrap(), x);
        assert_eq!(
            tensor_objects(&x, &Obj::z_mod(3)).unwrap(),
            Obj::ab(0, &[3, 3, 3]).unwrap()
        );
        assert!(tensor_objects(&Obj::p0(), &Obj::p1()).is_err());
    }

    #[test]
    fn complex_tensors() {
        let q = Obj::vect(1);
        let d = disk(1, &q);
        let t = tensor_complexes(&d, &sphere(0, &q)).unwrap();
        assert_eq!(t.product, d);
        let t = tensor_complexes(&sphere(0, &q), &d).unwrap();
        assert_eq!(t.product, d);
        let t = tensor_complexes(&d, &d).unwrap();
        assert_eq!(t.product.obj(1), &Obj::vect(2));
        assert_eq!(t.summand_index(1, 0), Some(1..2));
        assert!(is_acyclic(&t.product));
        let z2 = sphere(0, &Obj::z_mod(2));
        let t = tensor_complexes(&disk(1, &Obj::z()), &z2).unwrap();
        assert!(is_acyclic(&t.product));
    }

    #[test]
    fn boxes_of_generators() {
        for inst in [InstanceId::VectQ, InstanceId::FgAb] {
            let gens = generating_cofibrations(inst, ModelFlavor::ChGeq0, 1);
            for i in &gens {
                for j in &gens {
                    let b = pushout_product(i, j).unwrap();
                    let c = classify_map_model(&b.map, ModelFlavor::ChGeq0).unwrap();
                    assert!(c.is_cofibration);
                    let ti = classify_map_model(i, ModelFlavor::ChGeq0)
                        .unwrap()
                        .is_trivial_cofibration;
                    let tj = classify_map_model(j, ModelFlavor::ChGeq0)
                        .unwrap()
                        .is_trivial_cofibration;
                    if ti || tj {
                        assert!(c.is_trivial_cofibration);
                    }
                }
            }
        }
    }

    #[test]
    fn flat_and_pure() {
        let fp = default_flat_probes(InstanceId::FgAb);
        assert!(is_flat_probe(&Obj::z(), &fp).unwrap());
        assert!(!is_flat_probe(&Obj::z_mod(2), &fp).unwrap());
        assert!(is_flat_probe(&Obj::vect(1), &default_flat_probes(InstanceId::VectQ)).unwrap());
        let pp = default_pure_probes(InstanceId::FgAb);
        let z = Obj::z();
        assert!(!is_pure_probe(&Mor::from_i64(&z, &z, &[&[2]]).unwrap(), &pp).unwrap());
        let split = Mor::from_i64(&z, &Obj::z_free(2), &[&[1], &[0]]).unwrap();
        assert!(is_pure_probe(&split, &pp).unwrap());
    }
}
