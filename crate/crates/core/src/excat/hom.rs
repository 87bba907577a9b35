//! Hom groups as computable objects, and linear systems whose unknowns are morphisms.

use super::fgab::normalize_orders;
use super::obj::{InstanceId, Mor, MorMatrix, Obj};
use crate::error::{Error, Result};
use crate::exactlin::{
    complement_basis, inverse, rank, solve_int_linear, solve_linear, IntMatrix, Integer, Matrix,
    RatMatrix, Rational, Scalar,
};

#[derive(Clone, Debug)]
enum Coords {
    /// Generators are the matrix units, row-major.
    Units,
    /// Generators are `bd · E_ij · ba⁻¹` for the listed positions.
    Adapted {
        bd_inv: RatMatrix,
        ba: RatMatrix,
        positions: Vec<(usize, usize)>,
    },
    /// Generators are `g · E_ij` for the listed `(i, j, g)`.
    Scaled(Vec<(usize, usize, Integer)>),
}

/// `Hom(src, dst)` with a generating set of morphisms.
///
/// Raw generators are indexed lexicographically by matrix position. For vector
/// spaces they form a basis of the hom space; for groups they generate cyclic
/// summands whose orders are recorded, and `obj` is the hom group in
/// invariant-factor form.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub src: Obj,
    pub dst: Obj,
    pub obj: Obj,
    gens: Vec<Mor>,
    orders: Vec<Integer>,
    coords: Coords,
    to_normal: Option<IntMatrix>,
    from_normal: Option<IntMatrix>,
}

impl HomSpace {
    pub fn new(src: &Obj, dst: &Obj) -> Result<HomSpace> {
        src.same_instance(dst)?;
        let (n, m) = (src.gens(), dst.gens());
        Ok(match src.instance() {
            InstanceId::VectQ => {
                let mut gens = Vec::with_capacity(n * m);
                for i in 0..m {
                    for j in 0..n {
                        gens.push(Mor::raw_rat(src, dst, unit(m, n, i, j)));
                    }
                }
                HomSpace {
                    src: src.clone(),
                    dst: dst.clone(),
                    obj: Obj::vect(gens.len()),
                    orders: vec![Integer::zero(); gens.len()],
                    gens,
                    coords: Coords::Units,
                    to_normal: None,
                    from_normal: None,
                }
            }
            InstanceId::FiltQ => {
                let ws = src.sub_basis().unwrap();
                let wd = dst.sub_basis().unwrap();
                let ba = ws.hstack(&complement_basis(ws));
                let bd = wd.hstack(&complement_basis(wd));
                let bd_inv = inverse(&bd).expect("adapted basis");
                let ba_inv = inverse(&ba).expect("adapted basis");
                let (ks, kd) = (ws.cols(), wd.cols());
                let mut positions = Vec::new();
                let mut gens = Vec::new();
                for i in 0..m {
                    for j in 0..n {
                        // The source subspace must land in the target subspace.
                        if j < ks && i >= kd {
                            continue;
                        }
                        positions.push((i, j));
                        gens.push(Mor::raw_rat(
                            src,
                            dst,
                            bd.mul(&unit(m, n, i, j)).mul(&ba_inv),
                        ));
                    }
                }
                HomSpace {
                    src: src.clone(),
                    dst: dst.clone(),
                    obj: Obj::vect(gens.len()),
                    orders: vec![Integer::zero(); gens.len()],
                    gens,
                    coords: Coords::Adapted {
                        bd_inv,
                        ba,
                        positions,
                    },
                    to_normal: None,
                    from_normal: None,
                }
            }
            InstanceId::FgAb => {
                let (so, dord) = (src.orders(), dst.orders());
                let mut cells = Vec::new();
                let mut gens = Vec::new();
                let mut orders = Vec::new();
                for (i, e) in dord.iter().enumerate() {
                    for (j, a) in so.iter().enumerate() {
                        let (g, ord) = match (a.is_zero(), e.is_zero()) {
                            (true, _) => (Integer::one(), e.clone()),
                            (false, true) => continue,
                            (false, false) => {
                                let gc = a.gcd(e);
                                (e.div_exact(&gc), gc)
                            }
                        };
                        if ord.is_one() {
                            continue;
                        }
                        let mut mat = IntMatrix::zeros(m, n);
                        mat.set(i, j, g.clone());
                        gens.push(Mor::raw_int(src, dst, mat));
                        cells.push((i, j, g));
                        orders.push(ord);
                    }
                }
                let p = normalize_orders(&orders);
                HomSpace {
                    src: src.clone(),
                    dst: dst.clone(),
                    obj: p.obj,
                    gens,
                    orders,
                    coords: Coords::Scaled(cells),
                    to_normal: Some(p.to_normal),
                    from_normal: Some(p.from_normal),
                }
            }
        })
    }

    pub fn raw_generators(&self) -> &[Mor] {
        &self.gens
    }

    pub fn raw_orders(&self) -> &[Integer] {
        &self.orders
    }

    /// Coordinates of `m` on the raw generators.
    pub fn raw_coords(&self, m: &Mor) -> MorMatrix {
        debug_assert!(m.src() == &self.src && m.dst() == &self.dst);
        match &self.coords {
            Coords::Units => {
                let a = m.rat_ref();
                MorMatrix::Rat(RatMatrix::column_vector(a.entries().to_vec()))
            }
            Coords::Adapted {
                bd_inv,
                ba,
                positions,
            } => {
                let t = bd_inv.mul(m.rat_ref()).mul(ba);
                MorMatrix::Rat(RatMatrix::column_vector(
                    positions
                        .iter()
                        .map(|&(i, j)| t.get(i, j).clone())
                        .collect(),
                ))
            }
            Coords::Scaled(cells) => {
                let a = m.int();
                MorMatrix::Int(IntMatrix::column_vector(
                    cells
                        .iter()
                        .map(|(i, j, g)| a.get(*i, *j).div_exact(g))
                        .collect(),
                ))
            }
        }
    }

    /// Coordinates of `m` in the generators of `obj`.
    pub fn coords(&self, m: &Mor) -> MorMatrix {
        match (self.raw_coords(m), &self.to_normal) {
            (MorMatrix::Int(c), Some(t)) => {
                MorMatrix::Int(t.mul(&c).reduce_rows(&self.obj.orders()))
            }
            (c, _) => c,
        }
    }

    /// The morphism with the given raw coordinates.
    pub fn from_raw_coords(&self, c: &MorMatrix) -> Mor {
        let mut acc = Mor::zero(&self.src, &self.dst);
        match c {
            MorMatrix::Rat(c) => {
                for (k, g) in self.gens.iter().enumerate() {
                    let x = c.get(k, 0);
                    if !x.is_zero() {
                        acc = acc.add(&Mor::raw_rat(&self.src, &self.dst, g.rat_ref().scale(x)));
                    }
                }
            }
            MorMatrix::Int(c) => {
                for (k, g) in self.gens.iter().enumerate() {
                    let x = c.get(k, 0);
                    if !x.is_zero() {
                        acc = acc.add(&Mor::raw_int(&self.src, &self.dst, g.int().scale(x)));
                    }
                }
            }
        }
        acc
    }

    /// The morphism with the given coordinates on the generators of `obj`.
    pub fn from_coords(&self, c: &MorMatrix) -> Mor {
        match (c, &self.from_normal) {
            (MorMatrix::Int(c), Some(f)) => self.from_raw_coords(&MorMatrix::Int(f.mul(c))),
            _ => self.from_raw_coords(c),
        }
    }

    /// The morphism named by the `k`-th generator of `obj`.
    pub fn basis_element(&self, k: usize) -> Mor {
        let n = self.obj.gens();
        match self.src.instance() {
            InstanceId::FgAb => {
                let mut e = IntMatrix::zeros(n, 1);
                e.set(k, 0, Integer::one());
                self.from_coords(&MorMatrix::Int(e))
            }
            _ => {
                let mut e = RatMatrix::zeros(n, 1);
                e.set(k, 0, Rational::one());
                self.from_coords(&MorMatrix::Rat(e))
            }
        }
    }

    /// The element of `obj` named by `m`, as a map out of the rank-one generator.
    pub fn element(&self, m: &Mor) -> Mor {
        let inst = self.obj.instance();
        let u = Obj::unit(inst);
        Mor::raw(&u, &self.obj, self.coords(m))
    }

    /// Inverse of [`HomSpace::element`].
    pub fn morphism(&self, x: &Mor) -> Mor {
        self.from_coords(x.matrix())
    }
}

fn unit(m: usize, n: usize, i: usize, j: usize) -> RatMatrix {
    let mut e = RatMatrix::zeros(m, n);
    e.set(i, j, Rational::one());
    e
}

/// One summand `coeff · post ∘ h ∘ pre` of an equation in a [`MorSystem`].
#[derive(Clone, Debug)]
pub struct Term {
    pub unknown: usize,
    pub coeff: i64,
    pub pre: Option<Mor>,
    pub post: Option<Mor>,
}

impl Term {
    pub fn new(unknown: usize) -> Term {
        Term {
            unknown,
            coeff: 1,
            pre: None,
            post: None,
        }
    }

    pub fn pre(mut self, m: &Mor) -> Term {
        self.pre = Some(m.clone());
        self
    }

    pub fn post(mut self, m: &Mor) -> Term {
        self.post = Some(m.clone());
        self
    }

    pub fn coeff(mut self, c: i64) -> Term {
        self.coeff = c;
        self
    }
}

/// A system `Σ coeff · post ∘ hᵤ ∘ pre = rhs` in unknown morphisms `hᵤ`.
///
/// Each unknown is expanded on the raw generators of its hom space, every equation
/// is flattened entrywise, and the result is handed to the rational or modular
/// solver. For groups an entry in a row of order `e` is compared modulo `e`.
#[derive(Clone, Debug)]
pub struct MorSystem {
    instance: InstanceId,
    unknowns: Vec<HomSpace>,
    equations: Vec<(Vec<Term>, Mor)>,
    reversed: bool,
}

impl MorSystem {
    pub fn new(instance: InstanceId) -> MorSystem {
        MorSystem {
            instance,
            unknowns: Vec::new(),
            equations: Vec::new(),
            reversed: false,
        }
    }

    /// Enumerate unknown coordinates in reverse, which changes which particular
    /// solution the solver returns.
    pub fn reversed(mut self, yes: bool) -> MorSystem {
        self.reversed = yes;
        self
    }

    pub fn unknown(&mut self, src: &Obj, dst: &Obj) -> usize {
        self.unknowns
            .push(HomSpace::new(src, dst).expect("unknown within the instance"));
        self.unknowns.len() - 1
    }

    pub fn unknown_count(&self) -> usize {
        self.unknowns.len()
    }

    pub fn equation(&mut self, terms: Vec<Term>, rhs: Mor) {
        self.equations.push((terms, rhs));
    }

    fn columns(&self) -> Vec<(usize, usize)> {
        let mut cols = Vec::new();
        for (u, h) in self.unknowns.iter().enumerate() {
            for k in 0..h.gens.len() {
                cols.push((u, k));
            }
        }
        if self.reversed {
            cols.reverse();
        }
        cols
    }

    fn validate(&self) -> Result<()> {
        for (terms, rhs) in &self.equations {
            for t in terms {
                let h = self.unknowns.get(t.unknown).ok_or_else(|| {
                    Error::Precondition(format!("unknown {} does not exist", t.unknown))
                })?;
                let from = t.pre.as_ref().map_or(&h.src, |p| p.src());
                let to = t.post.as_ref().map_or(&h.dst, |p| p.dst());
                let pre_ok = t.pre.as_ref().is_none_or(|p| p.dst() == &h.src);
                let post_ok = t.post.as_ref().is_none_or(|p| p.src() == &h.dst);
                if !pre_ok || !post_ok || from != rhs.src() || to != rhs.dst() {
                    return Err(Error::Dimension(format!(
                        "term in unknown {} does not match the equation {} -> {}",
                        t.unknown,
                        rhs.src(),
                        rhs.dst()
                    )));
                }
            }
        }
        Ok(())
    }

    fn assemble<T: Scalar>(&self, mat: impl Fn(&Mor) -> Matrix<T>) -> (Matrix<T>, Matrix<T>) {
        let cols = self.columns();
        let index: std::collections::HashMap<(usize, usize), usize> =
            cols.iter().enumerate().map(|(c, &uk)| (uk, c)).collect();
        let rows: usize = self
            .equations
            .iter()
            .map(|(_, r)| r.src().gens() * r.dst().gens())
            .sum();
        let mut a = Matrix::<T>::zeros(rows, cols.len());
        let mut b = Matrix::<T>::zeros(rows, 1);
        let mut r0 = 0;
        for (terms, rhs) in &self.equations {
            let (p, q) = (rhs.src().gens(), rhs.dst().gens());
            let rm = mat(rhs);
            for i in 0..q {
                for j in 0..p {
                    b.set(r0 + i * p + j, 0, rm.get(i, j).clone());
                }
            }
            for t in terms {
                let h = &self.unknowns[t.unknown];
                let pre = t.pre.as_ref().map(&mat);
                let post = t.post.as_ref().map(&mat);
                let c = T::from_i64(t.coeff);
                for (k, g) in h.gens.iter().enumerate() {
                    let mut prod = mat(g);
                    if let Some(pre) = &pre {
                        prod = prod.mul(pre);
                    }
                    if let Some(post) = &post {
                        prod = post.mul(&prod);
                    }
                    let col = index[&(t.unknown, k)];
                    for i in 0..q {
                        for j in 0..p {
                            let v = prod.get(i, j);
                            if !v.is_zero() {
                                let idx = r0 + i * p + j;
                                let cur = a.get(idx, col).add_ref(&v.mul_ref(&c));
                                a.set(idx, col, cur);
                            }
                        }
                    }
                }
            }
            r0 += p * q;
        }
        (a, b)
    }

    fn moduli(&self) -> Vec<Integer> {
        let mut m = Vec::new();
        for (_, rhs) in &self.equations {
            let p = rhs.src().gens();
            for o in rhs.dst().orders() {
                for _ in 0..p {
                    m.push(o.clone());
                }
            }
        }
        m
    }

    /// One solution, or `None` if the system is inconsistent.
    pub fn solve(&self) -> Result<Option<Vec<Mor>>> {
        self.validate()?;
        let cols = self.columns();
        let mut values: Vec<MorMatrix> = self
            .unknowns
            .iter()
            .map(|h| match self.instance {
                InstanceId::FgAb => MorMatrix::Int(IntMatrix::zeros(h.gens.len(), 1)),
                _ => MorMatrix::Rat(RatMatrix::zeros(h.gens.len(), 1)),
            })
            .collect();
        match self.instance {
            InstanceId::FgAb => {
                let (a, b) = self.assemble(|m| m.int().clone());
                let Some(x) = solve_int_linear(&a, &b, &self.moduli())? else {
                    return Ok(None);
                };
                for (c, &(u, k)) in cols.iter().enumerate() {
                    if let MorMatrix::Int(v) = &mut values[u] {
                        v.set(k, 0, x.get(c, 0).clone());
                    }
                }
            }
            _ => {
                let (a, b) = self.assemble(|m| m.rat_ref().clone());
                let Some(x) = solve_linear(&a, &b)? else {
                    return Ok(None);
                };
                for (c, &(u, k)) in cols.iter().enumerate() {
                    if let MorMatrix::Rat(v) = &mut values[u] {
                        v.set(k, 0, x.get(c, 0).clone());
                    }
                }
            }
        }
        Ok(Some(
            self.unknowns
                .iter()
                .zip(&values)
                .map(|(h, v)| h.from_raw_coords(v))
                .collect(),
        ))
    }
}

/// Some `h` with `m ∘ h = g`.
///
/// Solved one column of `g` at a time; the joint system over `Hom(src g, src m)` is
/// only used when the column solutions do not assemble into a morphism, which needs
/// `m` to be non-monic.
pub fn factor_through_post(m: &Mor, g: &Mor) -> Option<Mor> {
    let (src, dst) = (g.src(), m.src());
    match m.instance() {
        InstanceId::FgAb if src.gens() > 1 => {
            let z = Obj::z();
            let mut h = IntMatrix::zeros(dst.gens(), src.gens());
            for j in 0..src.gens() {
                let mut e = IntMatrix::zeros(src.gens(), 1);
                e.set(j, 0, Integer::one());
                let pick = Mor::from_int(&z, src, e).expect("maps out of Z are free");
                let x = factor_by_system(m, &g.after(&pick))?;
                for i in 0..dst.gens() {
                    h.set(i, j, x.int().get(i, 0).clone());
                }
            }
            Mor::from_int(src, dst, h)
                .ok()
                .or_else(|| factor_by_system(m, g))
        }
        InstanceId::FgAb => factor_by_system(m, g),
        _ => {
            let x = solve_linear(m.rat_ref(), g.rat_ref()).ok().flatten()?;
            Mor::from_rat(src, dst, x).ok().or_else(|| {
                if rank(m.rat_ref()) == dst.gens() {
                    None
                } else {
                    factor_by_system(m, g)
                }
            })
        }
    }
}

fn factor_by_system(m: &Mor, g: &Mor) -> Option<Mor> {
    let mut sys = MorSystem::new(m.instance());
    let h = sys.unknown(g.src(), m.src());
    sys.equation(vec![Term::new(h).post(m)], g.clone());
    sys.solve().ok().flatten().map(|mut v| v.remove(0))
}

/// Some `h` with `h ∘ e = g`.
///
/// When `e` is onto, `h` is forced on each generator by a lift through `e`; otherwise
/// the joint system over `Hom(dst e, dst g)` is solved.
pub fn factor_through_pre(e: &Mor, g: &Mor) -> Option<Mor> {
    let (src, dst) = (e.dst(), g.dst());
    let h = match e.instance() {
        InstanceId::FgAb => {
            let z = Obj::z();
            let mut h = IntMatrix::zeros(dst.gens(), src.gens());
            for j in 0..src.gens() {
                let mut c = IntMatrix::zeros(src.gens(), 1);
                c.set(j, 0, Integer::one());
                let pick = Mor::from_int(&z, src, c).expect("maps out of Z are free");
                let Some(x) = factor_through_post(e, &pick) else {
                    return factor_pre_by_system(e, g);
                };
                let col = g.after(&x);
                for i in 0..dst.gens() {
                    h.set(i, j, col.int().get(i, 0).clone());
                }
            }
            Mor::from_int(src, dst, h).ok()?
        }
        _ => {
            let Some(lift) = solve_linear(e.rat_ref(), &RatMatrix::identity(src.gens()))
                .ok()
                .flatten()
            else {
                return factor_pre_by_system(e, g);
            };
            Mor::from_rat(src, dst, g.rat_ref().mul(&lift)).ok()?
        }
    };
    (h.after(e) == *g).then_some(h)
}

fn factor_pre_by_system(e: &Mor, g: &Mor) -> Option<Mor> {
    let mut sys = MorSystem::new(e.instance());
    let h = sys.unknown(e.dst(), g.dst());
    sys.equation(vec![Term::new(h).pre(e)], g.clone());
    sys.solve().ok().flatten().map(|mut v| v.remove(0))
}

/// The inverse of an isomorphism.
pub fn two_sided_inverse(f: &Mor) -> Option<Mor> {
    if !super::limits::is_iso(f) {
        return None;
    }
    let (a, b) = (f.src(), f.dst());
    match f.instance() {
        InstanceId::FgAb => factor_through_post(f, &Mor::identity(b)),
        _ => Mor::from_rat(b, a, inverse(f.rat_ref())?).ok(),
    }
}

/// `two_sided_inverse` by one linear system over `Hom(dst, src)`; slow on large objects.
pub fn two_sided_inverse_by_system(f: &Mor) -> Option<Mor> {
    let mut sys = MorSystem::new(f.instance());
    let h = sys.unknown(f.dst(), f.src());
    sys.equation(vec![Term::new(h).post(f)], Mor::identity(f.dst()));
    sys.equation(vec![Term::new(h).pre(f)], Mor::identity(f.src()));
    sys.solve().ok().flatten().map(|mut v| v.remove(0))
}

/// `Hom(g, f): Hom(g, src f) → Hom(g, dst f)` is onto.
pub fn hom_surjective(g: &Obj, f: &Mor) -> bool {
    let target = HomSpace::new(g, f.dst()).expect("same instance");
    target
        .raw_generators()
        .iter()
        .all(|t| factor_through_post(f, t).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_group_examples() {
        let h = HomSpace::new(&Obj::z_mod(2), &Obj::z()).unwrap();
        assert!(h.obj.is_zero());
        let h = HomSpace::new(&Obj::z_mod(4), &Obj::z_mod(6)).unwrap();
        assert_eq!(h.obj, Obj::z_mod(2));
        let v = Obj::filt_std(3, 1);
        let h = HomSpace::new(&Obj::p0(), &v).unwrap();
        assert_eq!(h.obj, Obj::vect(3));
        let h = HomSpace::new(&Obj::p1(), &v).unwrap();
        assert_eq!(h.obj, Obj::vect(1));
        let h = HomSpace::new(&Obj::z(), &Obj::ab(1, &[2]).unwrap()).unwrap();
        assert_eq!(h.obj, Obj::ab(1, &[2]).unwrap());
    }

    #[test]
    fn coordinates_round_trip() {
        let a = Obj::ab(1, &[2, 4]).unwrap();
        let b = Obj::ab(0, &[2, 6]).unwrap();
        let h = HomSpace::new(&a, &b).unwrap();
        for k in 0..h.obj.gens() {
            let m = h.basis_element(k);
            let c = h.coords(&m);
            let mut e = IntMatrix::zeros(h.obj.gens(), 1);
            e.set(k, 0, Integer::one());
            assert_eq!(c, MorMatrix::Int(e.reduce_rows(&h.obj.orders())));
        }
        let w = Obj::filt(2, &RatMatrix::from_i64_rows(&[&[1], &[1]])).unwrap();
        let h = HomSpace::new(&w, &w).unwrap();
        assert_eq!(h.obj, Obj::vect(3));
        for g in h.raw_generators() {
            assert_eq!(&h.from_raw_coords(&h.raw_coords(g)), g);
        }
    }

    #[test]
    fn solving_for_morphisms() {
        let z = Obj::z();
        let z2 = Obj::z_mod(2);
        let two = Mor::from_i64(&z, &z, &[&[2]]).unwrap();
        let one = Mor::identity(&z);
        assert!(factor_through_post(&two, &one).is_none());
        assert!(!hom_surjective(&z, &two));
        let proj = Mor::from_i64(&z, &z2, &[&[1]]).unwrap();
        assert!(hom_surjective(&z, &proj));
        let h = factor_through_pre(&proj, &Mor::from_i64(&z, &Obj::z_mod(4), &[&[2]]).unwrap());
        assert!(h.is_some());
        let swap = Mor::from_i64(&Obj::vect(2), &Obj::vect(2), &[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(two_sided_inverse(&swap), Some(swap.clone()));
        let inc = Mor::from_i64(&Obj::p0(), &Obj::p1(), &[&[1]]).unwrap();
        assert!(two_sided_inverse(&inc).is_none());
    }
}
