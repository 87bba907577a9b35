//! Invariant-factor normalization of presented abelian groups.

use super::obj::{Mor, Obj};
use crate::exactlin::{
    kernel_lattice, smith_normal_form, solve_int_linear, IntMatrix, Integer, Scalar,
};

/// `Z^k / colspan(relations)` rewritten in invariant-factor form.
///
/// `to_normal` sends old coordinates to new ones; `from_normal` sends each new
/// generator to a representative in the old coordinates.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub obj: Obj,
    pub to_normal: IntMatrix,
    pub from_normal: IntMatrix,
}

pub fn normalize(k: usize, relations: &IntMatrix) -> Presentation {
    assert_eq!(relations.rows(), k);
    let s = smith_normal_form(relations);
    let mut free_idx: Vec<usize> = (s.rank..k).collect();
    let mut tors_idx = Vec::new();
    let mut torsion = Vec::new();
    for i in 0..s.rank {
        let d = s.d.get(i, i);
        if !d.is_one() {
            tors_idx.push(i);
            torsion.push(d.clone());
        }
    }
    let free = free_idx.len();
    free_idx.extend(tors_idx);
    let obj = Obj::Ab { free, torsion };
    Presentation {
        to_normal: s.u.select_rows(&free_idx).reduce_rows(&obj.orders()),
        from_normal: s.u_inv.select_cols(&free_idx),
        obj,
    }
}

/// Normalizes `⊕ Z/oᵢ` (order 0 meaning `Z`). Already-sorted chains become a
/// permutation of coordinates.
pub fn normalize_orders(orders: &[Integer]) -> Presentation {
    let k = orders.len();
    let mut idx: Vec<usize> = (0..k).filter(|&i| !orders[i].is_one()).collect();
    idx.sort_by(|&a, &b| {
        let (oa, ob) = (&orders[a], &orders[b]);
        match (oa.is_zero(), ob.is_zero()) {
            (true, true) => a.cmp(&b),
            (true, false) => std::cmp::Ordering::Less,
            (false, true) => std::cmp::Ordering::Greater,
            _ => oa.cmp(ob).then(a.cmp(&b)),
        }
    });
    let chain: Vec<Integer> = idx
        .iter()
        .filter(|&&i| !orders[i].is_zero())
        .map(|&i| orders[i].clone())
        .collect();
    if chain.windows(2).all(|w| w[0].divides(&w[1])) {
        let free = idx.len() - chain.len();
        let n = idx.len();
        let mut to = IntMatrix::zeros(n, k);
        let mut from = IntMatrix::zeros(k, n);
        for (new, &old) in idx.iter().enumerate() {
            to.set(new, old, Integer::one());
            from.set(old, new, Integer::one());
        }
        return Presentation {
            obj: Obj::Ab {
                free,
                torsion: chain,
            },
            to_normal: to,
            from_normal: from,
        };
    }
    normalize(k, &diagonal_relations(orders))
}

/// One relation column `oᵢ eᵢ` per generator of nonzero order.
pub fn diagonal_relations(orders: &[Integer]) -> IntMatrix {
    let nz: Vec<usize> = (0..orders.len())
        .filter(|&i| !orders[i].is_zero())
        .collect();
    let mut r = IntMatrix::zeros(orders.len(), nz.len());
    for (c, &i) in nz.iter().enumerate() {
        r.set(i, c, orders[i].clone());
    }
    r
}

pub fn kernel(f: &Mor) -> (Obj, Mor) {
    let a = f.src();
    let lb = kernel_lattice(f.int(), &f.dst().orders());
    let k = lb.cols();
    let rel_a = diagonal_relations(&a.orders());
    let rel = if rel_a.cols() == 0 {
        IntMatrix::zeros(k, 0)
    } else {
        solve_int_linear(&lb, &rel_a, &vec![Integer::zero(); a.gens()])
            .expect("shapes agree")
            .expect("relations of the source lie in the kernel lattice")
    };
    let p = normalize(k, &rel);
    let incl = Mor::raw_int(&p.obj, a, lb.mul(&p.from_normal));
    (p.obj, incl)
}

pub fn cokernel(f: &Mor) -> (Obj, Mor) {
    let b = f.dst();
    let rel = diagonal_relations(&b.orders()).hstack(f.int());
    let p = normalize(b.gens(), &rel);
    let proj = Mor::raw_int(b, &p.obj, p.to_normal);
    (p.obj, proj)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presentation_of_z_mod_2_plus_z_mod_3() {
        let p = normalize_orders(&[Integer::new(2), Integer::new(3)]);
        assert_eq!(p.obj, Obj::z_mod(6));
        let p = normalize_orders(&[
            Integer::new(4),
            Integer::zero(),
            Integer::new(2),
            Integer::one(),
        ]);
        assert_eq!(p.obj, Obj::ab(1, &[2, 4]).unwrap());
        assert_eq!(p.to_normal.mul(&p.from_normal), IntMatrix::identity(3));
    }

    #[test]
    fn kernel_and_cokernel_examples() {
        let z = Obj::z();
        let two = Mor::from_i64(&z, &z, &[&[2]]).unwrap();
        assert_eq!(kernel(&two).0, Obj::zero(crate::excat::InstanceId::FgAb));
        assert_eq!(cokernel(&two).0, Obj::z_mod(2));
        let proj = Mor::from_i64(&z, &Obj::z_mod(2), &[&[1]]).unwrap();
        let (k, inc) = kernel(&proj);
        assert_eq!(k, z);
        assert_eq!(inc.int().get(0, 0).abs(), Integer::new(2));
    }
}
