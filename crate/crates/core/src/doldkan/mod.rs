//! Simplicial objects truncated at a level `L`, the normalization `N`, and `Γ`.
//!
//! `Γ(C)_n = ⊕_{η: [n] ↠ [p]} C_p`, summands ordered by `p` and then
//! lexicographically. `NΓ(C)` agrees with `C` after the sign `(−1)^{n(n+1)/2}` in
//! degree `n`, which absorbs the `(−1)^n` in the normalized differential.

mod simplex;

use std::collections::HashMap;

use crate::chain::{is_quasi_iso, ChainMap, Complex};
use crate::error::{Error, Result};
use crate::excat::{
    direct_sum_in, factor_through_post, generator_family, hom_surjective, is_iso, kernel,
    two_sided_inverse, Biproduct, InstanceId, Mor, Obj,
};
use crate::model::{is_fibration, ModelFlavor};

pub use simplex::{enumerate_surjections, Monotone, MonotoneSurjection};

/// Objects `A_0 … A_L` with faces and degeneracies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialObject {
    pub instance: InstanceId,
    pub level: usize,
    pub objects: Vec<Obj>,
    /// `faces[n][i] = d_i: A_n → A_{n−1}`; `faces[0]` is empty.
    pub faces: Vec<Vec<Mor>>,
    /// `degeneracies[n][i] = s_i: A_n → A_{n+1}` for `n < L`.
    pub degeneracies: Vec<Vec<Mor>>,
}

impl SimplicialObject {
    pub fn new(
        instance: InstanceId,
        objects: Vec<Obj>,
        faces: Vec<Vec<Mor>>,
        degeneracies: Vec<Vec<Mor>>,
    ) -> Result<SimplicialObject> {
        let level = objects
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::Dimension("no levels".into()))?;
        let a = SimplicialObject {
            instance,
            level,
            objects,
            faces,
            degeneracies,
        };
        if let Some(msg) = a.shape_error().or_else(|| a.identity_violation()) {
            return Err(Error::Precondition(msg));
        }
        Ok(a)
    }

    /// The constant simplicial object on `x`.
    pub fn constant(x: &Obj, level: usize) -> SimplicialObject {
        let id = Mor::identity(x);
        SimplicialObject {
            instance: x.instance(),
            level,
            objects: vec![x.clone(); level + 1],
            faces: (0..=level)
                .map(|n| {
                    if n == 0 {
                        vec![]
                    } else {
                        vec![id.clone(); n + 1]
                    }
                })
                .collect(),
            degeneracies: (0..level).map(|n| vec![id.clone(); n + 1]).collect(),
        }
    }

    fn shape_error(&self) -> Option<String> {
        let l = self.level;
        if self.faces.len() != l + 1 || self.degeneracies.len() != l {
            return Some("wrong number of face or degeneracy levels".into());
        }
        for n in 0..=l {
            let want = if n == 0 { 0 } else { n + 1 };
            if self.faces[n].len() != want {
                return Some(format!("level {n} needs {want} faces"));
            }
            for d in &self.faces[n] {
                if d.src() != &self.objects[n] || d.dst() != &self.objects[n - 1] {
                    return Some(format!("face at level {n} has the wrong endpoints"));
                }
            }
            if n < l {
                if self.degeneracies[n].len() != n + 1 {
                    return Some(format!("level {n} needs {} degeneracies", n + 1));
                }
                for s in &self.degeneracies[n] {
                    if s.src() != &self.objects[n] || s.dst() != &self.objects[n + 1] {
                        return Some(format!("degeneracy at level {n} has the wrong endpoints"));
                    }
                }
            }
        }
        None
    }

    fn d(&self, n: usize, i: usize) -> &Mor {
        &self.faces[n][i]
    }

    fn s(&self, n: usize, i: usize) -> &Mor {
        &self.degeneracies[n][i]
    }

    /// The first simplicial identity that fails within the truncation, if any.
    pub fn identity_violation(&self) -> Option<String> {
        let l = self.level;
        for n in 2..=l {
            for j in 0..=n {
                for i in 0..j {
                    if self.d(n - 1, i).after(self.d(n, j))
                        != self.d(n - 1, j - 1).after(self.d(n, i))
                    {
                        return Some(format!("d_{i} d_{j} != d_{} d_{i} on level {n}", j - 1));
                    }
                }
            }
        }
        for n in 0..l.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    if self.s(n + 1, i).after(self.s(n, j))
                        != self.s(n + 1, j + 1).after(self.s(n, i))
                    {
                        return Some(format!("s_{i} s_{j} != s_{} s_{i} on level {n}", j + 1));
                    }
                }
            }
        }
        for n in 0..l {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = self.d(n + 1, i).after(self.s(n, j));
                    let ok = if i < j {
                        lhs == self.s(n - 1, j - 1).after(self.d(n, i))
                    } else if i == j || i == j + 1 {
                        lhs.is_identity()
                    } else {
                        lhs == self.s(n - 1, j).after(self.d(n, i - 1))
                    };
                    if !ok {
                        return Some(format!("d_{i} s_{j} identity fails on level {n}"));
                    }
                }
            }
        }
        None
    }

    /// `A(η): A_p → A_n` for a surjection `η: [n] ↠ [p]`.
    pub fn degeneracy_operator(&self, eta: &Monotone) -> Mor {
        match eta.split_degeneracy() {
            None => Mor::identity(&self.objects[eta.target]),
            Some((j, rest)) => {
                let n = eta.source();
                self.s(n - 1, j).after(&self.degeneracy_operator(&rest))
            }
        }
    }

    /// Conjugate by level-wise isomorphisms `φ_n: A_n → B_n`.
    pub fn twist(&self, isos: &[Mor]) -> Result<SimplicialObject> {
        if isos.len() != self.level + 1 || isos.iter().zip(&self.objects).any(|(p, o)| p.src() != o)
        {
            return Err(Error::Dimension(
                "one isomorphism per level is required".into(),
            ));
        }
        let inv: Vec<Mor> = isos
            .iter()
            .map(|p| {
                two_sided_inverse(p)
                    .ok_or_else(|| Error::Precondition("twist by a non-isomorphism".into()))
            })
            .collect::<Result<_>>()?;
        let faces = (0..=self.level)
            .map(|n| {
                self.faces[n]
                    .iter()
                    .map(|d| isos[n - 1].after(d).after(&inv[n]))
                    .collect()
            })
            .collect();
        let degeneracies = (0..self.level)
            .map(|n| {
                self.degeneracies[n]
                    .iter()
                    .map(|s| isos[n + 1].after(s).after(&inv[n]))
                    .collect()
            })
            .collect();
        SimplicialObject::new(
            self.instance,
            isos.iter().map(|p| p.dst().clone()).collect(),
            faces,
            degeneracies,
        )
    }
}

/// Level-wise maps commuting with faces and degeneracies.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    pub src: SimplicialObject,
    pub dst: SimplicialObject,
    pub levels: Vec<Mor>,
}

impl SimplicialMap {
    pub fn new(
        src: &SimplicialObject,
        dst: &SimplicialObject,
        levels: Vec<Mor>,
    ) -> Result<SimplicialMap> {
        let f = SimplicialMap {
            src: src.clone(),
            dst: dst.clone(),
            levels,
        };
        if !f.is_valid() {
            return Err(Error::Precondition("not a simplicial map".into()));
        }
        Ok(f)
    }

    pub fn identity(a: &SimplicialObject) -> SimplicialMap {
        SimplicialMap {
            src: a.clone(),
            dst: a.clone(),
            levels: a.objects.iter().map(Mor::identity).collect(),
        }
    }

    pub fn is_valid(&self) -> bool {
        let (a, b) = (&self.src, &self.dst);
        if a.level != b.level || self.levels.len() != a.level + 1 {
            return false;
        }
        if self
            .levels
            .iter()
            .enumerate()
            .any(|(n, f)| f.src() != &a.objects[n] || f.dst() != &b.objects[n])
        {
            return false;
        }
        let f = &self.levels;
        (1..=a.level).all(|n| (0..=n).all(|i| f[n - 1].after(a.d(n, i)) == b.d(n, i).after(&f[n])))
            && (0..a.level)
                .all(|n| (0..=n).all(|i| f[n + 1].after(a.s(n, i)) == b.s(n, i).after(&f[n])))
    }
}

/// `Γ(C)` with its summand bookkeeping.
#[derive(Clone, Debug)]
pub struct Gamma {
    pub complex: Complex,
    pub object: SimplicialObject,
    /// Surjections out of `[n]` indexing the summands of level `n`.
    pub index: Vec<Vec<MonotoneSurjection>>,
    pub sums: Vec<Biproduct>,
}

impl Gamma {
    /// The summand `C_n` indexed by the identity of `[n]`.
    pub fn inclusion(&self, n: usize) -> Mor {
        let k = self.index[n].len() - 1;
        debug_assert_eq!(self.index[n][k], Monotone::identity(n));
        self.sums[n].inj[k].clone()
    }

    fn summand(&self, n: usize, eta: &Monotone) -> usize {
        self.index[n]
            .binary_search_by(|m| (m.target, &m.values).cmp(&(eta.target, &eta.values)))
            .expect("surjection listed")
    }

    /// `Γ(C)(α): Γ_n → Γ_m` for `α: [m] → [n]`.
    pub fn operator(&self, alpha: &Monotone) -> Mor {
        let (m, n) = (alpha.source(), alpha.target);
        let c = &self.complex;
        let mut blocks: HashMap<usize, (usize, Mor)> = HashMap::new();
        for (s, eta) in self.index[n].iter().enumerate() {
            let p = eta.target;
            let (eta2, eps) = eta.after(alpha).epi_mono();
            let q = eta2.target;
            let t = self.summand(m, &eta2);
            if q == p {
                blocks.insert(s, (t, Mor::identity(c.obj(p as i64))));
            } else if q + 1 == p && eps == Monotone::coface(p, p) {
                blocks.insert(s, (t, c.d(p as i64)));
            }
        }
        self.sums[n].block_mor(&self.sums[m], |t, s| match blocks.get(&s) {
            Some((tt, f)) if *tt == t => Some(f.clone()),
            _ => None,
        })
    }
}

fn surjections_from(n: usize) -> Vec<MonotoneSurjection> {
    (0..=n)
        .flat_map(|p| enumerate_surjections(n, p).expect("p <= n"))
        .collect()
}

/// `Γ(C)` up to level `L`; the simplicial identities are re-verified.
pub fn gamma(c: &Complex, level: usize) -> Result<Gamma> {
    if c.degrees()
        .any(|n| (n < 0 || n > level as i64) && !c.obj(n).is_zero())
    {
        return Err(Error::Precondition(format!(
            "complex must be supported in [0, {level}]"
        )));
    }
    let inst = c.instance();
    let complex = c.restrict(0, level as i64);
    let index: Vec<Vec<MonotoneSurjection>> = (0..=level).map(surjections_from).collect();
    let sums: Vec<Biproduct> = index
        .iter()
        .map(|ix| {
            let objs: Vec<Obj> = ix
                .iter()
                .map(|eta| complex.obj(eta.target as i64).clone())
                .collect();
            direct_sum_in(inst, &objs)
        })
        .collect();
    let mut g = Gamma {
        complex,
        object: SimplicialObject {
            instance: inst,
            level,
            objects: sums.iter().map(|s| s.obj.clone()).collect(),
            faces: vec![],
            degeneracies: vec![],
        },
        index,
        sums,
    };
    let faces = (0..=level)
        .map(|n| {
            if n == 0 {
                vec![]
            } else {
                (0..=n)
                    .map(|i| g.operator(&Monotone::coface(n, i)))
                    .collect()
            }
        })
        .collect();
    let degeneracies = (0..level)
        .map(|n| {
            (0..=n)
                .map(|i| g.operator(&Monotone::codegeneracy(n, i)))
                .collect()
        })
        .collect();
    g.object.faces = faces;
    g.object.degeneracies = degeneracies;
    if let Some(msg) = g.object.identity_violation() {
        return Err(Error::Invariant(format!("gamma output: {msg}")));
    }
    Ok(g)
}

/// `Γ(f)`, acting by `f_p` on every summand indexed by a surjection onto `[p]`.
pub fn gamma_map(f: &ChainMap, src: &Gamma, dst: &Gamma) -> Result<SimplicialMap> {
    let levels = (0..=src.object.level)
        .map(|n| {
            src.sums[n].block_mor(&dst.sums[n], |t, s| {
                (t == s).then(|| f.comp(src.index[n][s].target as i64))
            })
        })
        .collect();
    SimplicialMap::new(&src.object, &dst.object, levels)
}

/// `NA` with its inclusions `NA_n → A_n`.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub complex: Complex,
    pub inclusions: Vec<Mor>,
}

/// `NA_n = ∩_{i<n} ker d_i` with differential `(−1)^n d_n`.
pub fn normalize(a: &SimplicialObject) -> Result<Normalized> {
    let inst = a.instance;
    let mut inclusions = vec![Mor::identity(&a.objects[0])];
    for n in 1..=a.level {
        let s = direct_sum_in(inst, &vec![a.objects[n - 1].clone(); n]);
        let stacked = s.pair(&a.objects[n], &a.faces[n][..n]);
        inclusions.push(kernel(&stacked).1);
    }
    let objects = inclusions.iter().map(|k| k.src().clone()).collect();
    let diffs = (1..=a.level)
        .map(|n| {
            factor_through_post(&inclusions[n - 1], &a.d(n, n).after(&inclusions[n]))
                .map(|m| m.signed(n as i64))
                .ok_or_else(|| Error::Invariant("last face leaves the normalized subobject".into()))
        })
        .collect::<Result<_>>()?;
    Ok(Normalized {
        complex: Complex::new(inst, 0, objects, diffs)?,
        inclusions,
    })
}

/// `N(f)` between normalizations.
pub fn normalize_map(f: &SimplicialMap, src: &Normalized, dst: &Normalized) -> Result<ChainMap> {
    ChainMap::from_fn(&src.complex, &dst.complex, |n| {
        if n < 0 || n as usize >= f.levels.len() {
            return Mor::zero(src.complex.obj(n), dst.complex.obj(n));
        }
        let k = n as usize;
        factor_through_post(&dst.inclusions[k], &f.levels[k].after(&src.inclusions[k]))
            .expect("maps preserve face kernels")
    })
}

/// `(−1)^{n(n+1)/2}`, as an exponent.
pub fn normalization_sign(n: i64) -> i64 {
    n * (n + 1) / 2
}

/// `C → NΓ(C)` in degrees `≤ L`: the identity summand, signed.
pub fn unit_map(c: &Complex, g: &Gamma, nc: &Normalized) -> Result<ChainMap> {
    let level = g.object.level as i64;
    let src = c.restrict(0, level);
    let comps: Vec<Option<Mor>> = (0..=level)
        .map(|n| {
            factor_through_post(&nc.inclusions[n as usize], &g.inclusion(n as usize))
                .map(|m| m.signed(normalization_sign(n)))
        })
        .collect();
    if comps.iter().any(Option::is_none) {
        return Err(Error::Invariant("top summand is not normalized".into()));
    }
    ChainMap::from_fn(&src, &nc.complex, |n| {
        if (0..=level).contains(&n) {
            comps[n as usize].clone().unwrap()
        } else {
            Mor::zero(src.obj(n), nc.complex.obj(n))
        }
    })
}

/// `NΓ(C) ≅ C` through the inclusion of the identity summands, degrees `≤ L`.
pub fn check_equivalence(c: &Complex, level: usize) -> Result<bool> {
    let g = gamma(c, level)?;
    let nc = normalize(&g.object)?;
    match unit_map(c, &g, &nc) {
        Ok(u) => Ok((0..=level as i64).all(|n| is_iso(&u.comp(n)))),
        Err(Error::NotAChainMap(_)) | Err(Error::Invariant(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// `ΓN(A) → A`, sending the summand of `η: [n] ↠ [p]` through `±A(η) ∘ (NA_p ⊂ A_p)`
/// with the sign of the unit in degree `p`.
pub fn counit_map(a: &SimplicialObject) -> Result<(Gamma, SimplicialMap)> {
    let na = normalize(a)?;
    let g = gamma(&na.complex, a.level)?;
    let target = SimplicialObject::new(
        a.instance,
        a.objects.clone(),
        a.faces.clone(),
        a.degeneracies.clone(),
    )?;
    let levels = (0..=a.level)
        .map(|n| {
            let maps: Vec<Mor> = g.index[n]
                .iter()
                .map(|eta| {
                    a.degeneracy_operator(eta)
                        .after(&na.inclusions[eta.target])
                        .signed(normalization_sign(eta.target as i64))
                })
                .collect();
            g.sums[n].copair(&a.objects[n], &maps)
        })
        .collect();
    let m = SimplicialMap::new(&g.object, &target, levels)?;
    Ok((g, m))
}

/// `ΓN(A) → A` is a level-wise isomorphism of simplicial objects.
pub fn check_counit(a: &SimplicialObject) -> Result<bool> {
    match counit_map(a) {
        Ok((_, m)) => Ok(m.levels.iter().all(is_iso)),
        Err(Error::Precondition(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// What `N` does to a simplicial map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NReport {
    pub is_chain_map: bool,
    /// `Hom(G, f_n)` is onto for every generator and every level `n > 0`.
    pub hom_surjective_positive: bool,
    pub n_is_fibration: bool,
    pub n_is_weak_equivalence: bool,
}

impl NReport {
    /// Level-wise surjectivity on generators forces a fibration.
    pub fn consistent(&self) -> bool {
        self.is_chain_map && (!self.hom_surjective_positive || self.n_is_fibration)
    }
}

pub fn check_n_preserves_structure(f: &SimplicialMap) -> Result<NReport> {
    if !f.is_valid() {
        return Err(Error::Precondition("not a simplicial map".into()));
    }
    let (na, nb) = (normalize(&f.src)?, normalize(&f.dst)?);
    let nf = normalize_map(f, &na, &nb);
    let gens = generator_family(f.src.instance);
    let hom_surjective_positive = f
        .levels
        .iter()
        .skip(1)
        .all(|m| gens.iter().all(|g| hom_surjective(g, m)));
    Ok(match nf {
        Ok(nf) => NReport {
            is_chain_map: nf.is_valid(),
            hom_surjective_positive,
            n_is_fibration: is_fibration(&nf, ModelFlavor::ChGeq0),
            n_is_weak_equivalence: is_quasi_iso(&nf),
        },
        Err(_) => NReport {
            is_chain_map: false,
            hom_surjective_positive,
            n_is_fibration: false,
            n_is_weak_equivalence: false,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{disk, sphere};
    use num_integer::binomial;

    #[test]
    fn constant_objects() {
        let a = SimplicialObject::constant(&Obj::z_mod(2), 3);
        assert!(a.identity_violation().is_none());
        let n = normalize(&a).unwrap();
        assert_eq!(n.complex.trimmed(), sphere(0, &Obj::z_mod(2)));
        let g = gamma(&sphere(0, &Obj::vect(2)), 3).unwrap();
        assert_eq!(g.object, SimplicialObject::constant(&Obj::vect(2), 3));
    }

    #[test]
    fn gamma_of_a_sphere() {
        let q = Obj::vect(1);
        let g = gamma(&sphere(1, &q), 4).unwrap();
        let dims: Vec<usize> = g.object.objects.iter().map(Obj::gens).collect();
        assert_eq!(dims, (0..=4).map(|n| binomial(n, 1)).collect::<Vec<_>>());
        let n = normalize(&g.object).unwrap();
        assert_eq!(n.complex.trimmed(), sphere(1, &q));
        assert!(gamma(&Complex::zero(InstanceId::VectQ), 2)
            .unwrap()
            .object
            .objects
            .iter()
            .all(Obj::is_zero));
    }

    #[test]
    fn equivalence_on_spheres_and_disks() {
        for inst in InstanceId::ALL {
            for g in generator_family(inst) {
                for n in 0..=3 {
                    assert!(
                        check_equivalence(&sphere(n, &g), 4).unwrap(),
                        "{inst} S^{n}"
                    );
                    if n > 0 {
                        assert!(check_equivalence(&disk(n, &g), 4).unwrap(), "{inst} D^{n}");
                    }
                }
            }
        }
        assert!(check_equivalence(&Complex::zero(InstanceId::FgAb), 3).unwrap());
        assert!(gamma(&sphere(5, &Obj::z()), 4).is_err());
    }

    #[test]
    fn counit_and_maps() {
        let z = Obj::z();
        let two = Mor::from_i64(&z, &Obj::z_mod(2), &[&[1]]).unwrap();
        let c = disk(2, &z);
        let g = gamma(&c, 3).unwrap();
        assert!(check_counit(&g.object).unwrap());
        for n in 1..=3 {
            assert!(
                check_counit(&gamma(&disk(n, &z), 3).unwrap().object).unwrap(),
                "D^{n}"
            );
        }
        let q = Obj::vect(1);
        let d = Mor::from_i64(&q, &q, &[&[-2]]).unwrap();
        let c = Complex::new(InstanceId::VectQ, 0, vec![q.clone(), q], vec![d]).unwrap();
        assert!(check_counit(&gamma(&c, 2).unwrap().object).unwrap());
        let s = sphere(1, &z);
        let t = sphere(1, &Obj::z_mod(2));
        let f = ChainMap::from_fn(&s, &t, |n| {
            if n == 1 {
                two.clone()
            } else {
                Mor::zero(s.obj(n), t.obj(n))
            }
        })
        .unwrap();
        let (gs, gt) = (gamma(&s, 3).unwrap(), gamma(&t, 3).unwrap());
        let gf = gamma_map(&f, &gs, &gt).unwrap();
        let r = check_n_preserves_structure(&gf).unwrap();
        assert!(r.is_chain_map && r.n_is_fibration && r.consistent());
        let r = check_n_preserves_structure(&SimplicialMap::identity(&g.object)).unwrap();
        assert!(r.hom_surjective_positive && r.n_is_fibration && r.n_is_weak_equivalence);
        let three = Mor::from_i64(&z, &z, &[&[3]]).unwrap();
        let h = ChainMap::from_fn(&s, &s, |n| {
            if n == 1 {
                three.clone()
            } else {
                Mor::zero(s.obj(n), s.obj(n))
            }
        })
        .unwrap();
        let r = check_n_preserves_structure(&gamma_map(&h, &gs, &gs).unwrap()).unwrap();
        assert!(!r.n_is_fibration && !r.hom_surjective_positive && r.consistent());
    }
}
