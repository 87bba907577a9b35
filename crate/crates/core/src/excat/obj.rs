use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::{rref, IntMatrix, Integer, RatMatrix, Rational, Scalar};

/// Which of the three exact categories a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InstanceId {
    /// Finite-dimensional rational vector spaces.
    VectQ,
    /// Pairs `(V, W)` with `W ⊆ V`; morphisms preserve the subspace.
    FiltQ,
    /// Finitely generated abelian groups.
    FgAb,
}

impl InstanceId {
    pub const ALL: [InstanceId; 3] = [InstanceId::VectQ, InstanceId::FiltQ, InstanceId::FgAb];

    pub fn name(self) -> &'static str {
        match self {
            InstanceId::VectQ => "VECTQ",
            InstanceId::FiltQ => "FILTQ",
            InstanceId::FgAb => "FGAB",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_uppercase().as_str() {
            "VECTQ" | "VECT" => Some(InstanceId::VectQ),
            "FILTQ" | "FILT" => Some(InstanceId::FiltQ),
            "FGAB" | "AB" => Some(InstanceId::FgAb),
            _ => None,
        }
    }

    /// The two abelian instances.
    pub fn is_abelian(self) -> bool {
        self != InstanceId::FiltQ
    }

    /// Instance in which hom groups between objects of `self` live.
    pub fn hom_instance(self) -> InstanceId {
        match self {
            InstanceId::FgAb => InstanceId::FgAb,
            _ => InstanceId::VectQ,
        }
    }
}

impl fmt::Display for InstanceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An object of one of the instances.
///
/// `Filt` keeps its subspace as a canonical basis (transposed RREF), so structural
/// equality is equality of filtered spaces. `Ab` is `Z^free ⊕ Z/d₁ ⊕ … ⊕ Z/d_k`
/// with `2 ≤ d₁ | d₂ | …`; generators are listed free first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Obj {
    Vect { dim: usize },
    Filt { dim: usize, sub: RatMatrix },
    Ab { free: usize, torsion: Vec<Integer> },
}

impl Obj {
    pub fn vect(dim: usize) -> Obj {
        Obj::Vect { dim }
    }

    /// Filtered space `(Q^dim, colspan(sub))`; `sub` may have dependent columns.
    pub fn filt(dim: usize, sub: &RatMatrix) -> Result<Obj> {
        if sub.rows() != dim {
            return Err(Error::InvalidObject(format!(
                "subspace basis has {} rows, ambient dimension is {dim}",
                sub.rows()
            )));
        }
        Ok(Obj::Filt {
            dim,
            sub: canonical_subspace(sub),
        })
    }

    pub fn filt_std(dim: usize, sub_dim: usize) -> Obj {
        assert!(sub_dim <= dim);
        let sub = RatMatrix::from_fn(dim, sub_dim, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        Obj::Filt { dim, sub }
    }

    /// `(Q, 0)`.
    pub fn p0() -> Obj {
        Obj::filt_std(1, 0)
    }

    /// `(Q, Q)`.
    pub fn p1() -> Obj {
        Obj::filt_std(1, 1)
    }

    pub fn ab(free: usize, torsion: &[i64]) -> Result<Obj> {
        Obj::ab_big(free, torsion.iter().map(|&d| Integer::new(d)).collect())
    }

    pub fn ab_big(free: usize, torsion: Vec<Integer>) -> Result<Obj> {
        if let Some(d) = torsion.iter().find(|d| *d < &Integer::new(2)) {
            return Err(Error::InvalidObject(format!(
                "torsion coefficient {d} is below 2"
            )));
        }
        for w in torsion.windows(2) {
            if !w[0].divides(&w[1]) {
                return Err(Error::InvalidObject(format!(
                    "torsion coefficients {} and {} break the divisibility chain",
                    w[0], w[1]
                )));
            }
        }
        Ok(Obj::Ab { free, torsion })
    }

    pub fn z() -> Obj {
        Obj::Ab {
            free: 1,
            torsion: vec![],
        }
    }

    pub fn z_free(n: usize) -> Obj {
        Obj::Ab {
            free: n,
            torsion: vec![],
        }
    }

    /// `Z/d`; `d = 1` gives the zero group and `d = 0` gives `Z`.
    pub fn z_mod(d: i64) -> Obj {
        match d {
            0 => Obj::z(),
            1 => Obj::zero(InstanceId::FgAb),
            _ => Obj::Ab {
                free: 0,
                torsion: vec![Integer::new(d.abs())],
            },
        }
    }

    pub fn zero(instance: InstanceId) -> Obj {
        match instance {
            InstanceId::VectQ => Obj::Vect { dim: 0 },
            InstanceId::FiltQ => Obj::Filt {
                dim: 0,
                sub: RatMatrix::zeros(0, 0),
            },
            InstanceId::FgAb => Obj::Ab {
                free: 0,
                torsion: vec![],
            },
        }
    }

    /// The tensor unit / the generator of rank one.
    pub fn unit(instance: InstanceId) -> Obj {
        match instance {
            InstanceId::VectQ => Obj::vect(1),
            InstanceId::FiltQ => Obj::p1(),
            InstanceId::FgAb => Obj::z(),
        }
    }

    pub fn instance(&self) -> InstanceId {
        match self {
            Obj::Vect { .. } => InstanceId::VectQ,
            Obj::Filt { .. } => InstanceId::FiltQ,
            Obj::Ab { .. } => InstanceId::FgAb,
        }
    }

    /// Number of coordinates: the dimension, or the number of generators.
    pub fn gens(&self) -> usize {
        match self {
            Obj::Vect { dim } | Obj::Filt { dim, .. } => *dim,
            Obj::Ab { free, torsion } => free + torsion.len(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.gens() == 0
    }

    /// Per-generator orders with 0 standing for infinite order. Only meaningful for `Ab`;
    /// vector spaces report all zeros.
    pub fn orders(&self) -> Vec<Integer> {
        match self {
            Obj::Ab { free, torsion } => {
                let mut o = vec![Integer::zero(); *free];
                o.extend(torsion.iter().cloned());
                o
            }
            _ => vec![Integer::zero(); self.gens()],
        }
    }

    pub fn sub_basis(&self) -> Option<&RatMatrix> {
        match self {
            Obj::Filt { sub, .. } => Some(sub),
            _ => None,
        }
    }

    pub fn sub_dim(&self) -> usize {
        match self {
            Obj::Filt { sub, .. } => sub.cols(),
            _ => 0,
        }
    }

    /// Group order for finite `Ab` objects, `None` when a free summand is present.
    pub fn order(&self) -> Option<Integer> {
        match self {
            Obj::Ab { free: 0, torsion } => {
                Some(torsion.iter().fold(Integer::one(), |acc, d| acc.mul_ref(d)))
            }
            _ => None,
        }
    }

    /// A numerical size used for budgets: dimension, or generator count.
    pub fn size(&self) -> usize {
        self.gens()
    }

    pub fn same_instance(&self, other: &Obj) -> Result<()> {
        if self.instance() == other.instance() {
            Ok(())
        } else {
            Err(Error::InstanceMismatch(format!(
                "{} vs {}",
                self.instance(),
                other.instance()
            )))
        }
    }
}

/// Columns spanning the same space, in the canonical form used for equality.
pub fn canonical_subspace(sub: &RatMatrix) -> RatMatrix {
    let (r, pivots) = rref(&sub.transpose());
    r.submatrix(0..pivots.len(), 0..sub.rows()).transpose()
}

impl fmt::Debug for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obj::Vect { dim } => write!(f, "Q^{dim}"),
            Obj::Filt { dim, sub } => write!(f, "(Q^{dim}, W{})", sub),
            Obj::Ab { free, torsion } => {
                if *free == 0 && torsion.is_empty() {
                    return write!(f, "0");
                }
                let mut parts = Vec::new();
                if *free > 0 {
                    parts.push(format!("Z^{free}"));
                }
                parts.extend(torsion.iter().map(|d| format!("Z/{d}")));
                write!(f, "{}", parts.join("+"))
            }
        }
    }
}

/// Matrix of a morphism, rational for the vector-space instances and integral for `Ab`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum MorMatrix {
    Rat(RatMatrix),
    Int(IntMatrix),
}

impl MorMatrix {
    pub fn shape(&self) -> (usize, usize) {
        match self {
            MorMatrix::Rat(m) => m.shape(),
            MorMatrix::Int(m) => m.shape(),
        }
    }
}

/// A morphism `src → dst`; columns index generators of `src`.
///
/// `Ab` matrices are stored with row `i` reduced into `[0, dᵢ)` when the `i`-th target
/// generator has order `dᵢ`, so structural equality is equality of homomorphisms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mor {
    src: Obj,
    dst: Obj,
    mat: MorMatrix,
}

impl Mor {
    pub fn new(src: Obj, dst: Obj, mat: MorMatrix) -> Result<Mor> {
        src.same_instance(&dst)?;
        let (r, c) = mat.shape();
        if r != dst.gens() || c != src.gens() {
            return Err(Error::Dimension(format!(
                "matrix is {r}x{c} but {src} -> {dst} needs {}x{}",
                dst.gens(),
                src.gens()
            )));
        }
        let mat = match (src.instance(), mat) {
            (InstanceId::FgAb, m) => m,
            (_, MorMatrix::Int(m)) => MorMatrix::Rat(m.to_rational()),
            (_, m) => m,
        };
        let mat = match (src.instance(), mat) {
            (InstanceId::FgAb, MorMatrix::Int(m)) => {
                check_ab_columns(&src, &dst, &m)?;
                MorMatrix::Int(m.reduce_rows(&dst.orders()))
            }
            (InstanceId::FgAb, MorMatrix::Rat(m)) => match m.to_integer() {
                Some(m) => {
                    check_ab_columns(&src, &dst, &m)?;
                    MorMatrix::Int(m.reduce_rows(&dst.orders()))
                }
                None => {
                    return Err(Error::InvalidMorphism(
                        "non-integral entries in a group homomorphism".into(),
                    ))
                }
            },
            (InstanceId::FiltQ, MorMatrix::Rat(m)) => {
                let (ws, wd) = (src.sub_basis().unwrap(), dst.sub_basis().unwrap());
                if !crate::exactlin::colspace_contains(wd, &m.mul(ws)) {
                    return Err(Error::InvalidMorphism(
                        "filtered map does not send the source subspace into the target subspace"
                            .into(),
                    ));
                }
                MorMatrix::Rat(m)
            }
            (_, m) => m,
        };
        Ok(Mor { src, dst, mat })
    }

    pub fn from_rat(src: &Obj, dst: &Obj, m: RatMatrix) -> Result<Mor> {
        Mor::new(src.clone(), dst.clone(), MorMatrix::Rat(m))
    }

    pub fn from_int(src: &Obj, dst: &Obj, m: IntMatrix) -> Result<Mor> {
        Mor::new(src.clone(), dst.clone(), MorMatrix::Int(m))
    }

    /// Entries given as small integers, interpreted in the instance's scalar ring.
    pub fn from_i64(src: &Obj, dst: &Obj, rows: &[&[i64]]) -> Result<Mor> {
        let m = if rows.is_empty() {
            IntMatrix::zeros(0, src.gens())
        } else {
            IntMatrix::from_i64_rows(rows)
        };
        Mor::from_int(src, dst, m)
    }

    /// Trusted constructor for internally produced matrices: skips validation but
    /// still normalizes `Ab` entries.
    pub(crate) fn raw(src: &Obj, dst: &Obj, mat: MorMatrix) -> Mor {
        debug_assert_eq!(mat.shape(), (dst.gens(), src.gens()));
        let mat = match mat {
            MorMatrix::Int(m) if src.instance() == InstanceId::FgAb => {
                MorMatrix::Int(m.reduce_rows(&dst.orders()))
            }
            MorMatrix::Int(m) => MorMatrix::Rat(m.to_rational()),
            MorMatrix::Rat(m) if src.instance() == InstanceId::FgAb => MorMatrix::Int(
                m.to_integer()
                    .expect("integral matrix")
                    .reduce_rows(&dst.orders()),
            ),
            other => other,
        };
        Mor {
            src: src.clone(),
            dst: dst.clone(),
            mat,
        }
    }

    pub(crate) fn raw_int(src: &Obj, dst: &Obj, m: IntMatrix) -> Mor {
        Mor::raw(src, dst, MorMatrix::Int(m))
    }

    pub(crate) fn raw_rat(src: &Obj, dst: &Obj, m: RatMatrix) -> Mor {
        Mor::raw(src, dst, MorMatrix::Rat(m))
    }

    pub fn identity(obj: &Obj) -> Mor {
        let n = obj.gens();
        match obj.instance() {
            InstanceId::FgAb => Mor::raw_int(obj, obj, IntMatrix::identity(n)),
            _ => Mor::raw_rat(obj, obj, RatMatrix::identity(n)),
        }
    }

    pub fn zero(src: &Obj, dst: &Obj) -> Mor {
        let (r, c) = (dst.gens(), src.gens());
        match src.instance() {
            InstanceId::FgAb => Mor::raw_int(src, dst, IntMatrix::zeros(r, c)),
            _ => Mor::raw_rat(src, dst, RatMatrix::zeros(r, c)),
        }
    }

    pub fn src(&self) -> &Obj {
        &self.src
    }

    pub fn dst(&self) -> &Obj {
        &self.dst
    }

    pub fn instance(&self) -> InstanceId {
        self.src.instance()
    }

    pub fn matrix(&self) -> &MorMatrix {
        &self.mat
    }

    /// Rational matrix; for `Ab` the integer matrix converted.
    pub fn rat(&self) -> RatMatrix {
        match &self.mat {
            MorMatrix::Rat(m) => m.clone(),
            MorMatrix::Int(m) => m.to_rational(),
        }
    }

    pub fn rat_ref(&self) -> &RatMatrix {
        match &self.mat {
            MorMatrix::Rat(m) => m,
            MorMatrix::Int(_) => panic!("rational matrix requested from a group homomorphism"),
        }
    }

    pub fn int(&self) -> &IntMatrix {
        match &self.mat {
            MorMatrix::Int(m) => m,
            MorMatrix::Rat(_) => panic!("integer matrix requested from a linear map"),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.mat {
            MorMatrix::Rat(m) => m.is_zero(),
            MorMatrix::Int(m) => m.is_zero(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.dst
            && match &self.mat {
                MorMatrix::Rat(m) => m.is_identity(),
                MorMatrix::Int(m) => m.is_identity(),
            }
    }

    /// `self ∘ f`; panics on a mismatch. See [`compose`] for the checked form.
    pub fn after(&self, f: &Mor) -> Mor {
        assert_eq!(f.dst, self.src, "composition of non-composable morphisms");
        let mat = match (&self.mat, &f.mat) {
            (MorMatrix::Rat(a), MorMatrix::Rat(b)) => MorMatrix::Rat(a.mul(b)),
            (MorMatrix::Int(a), MorMatrix::Int(b)) => MorMatrix::Int(a.mul(b)),
            _ => unreachable!("mixed matrix kinds within one instance"),
        };
        Mor::raw(&f.src, &self.dst, mat)
    }

    pub fn add(&self, other: &Mor) -> Mor {
        assert!(
            self.src == other.src && self.dst == other.dst,
            "sum of non-parallel morphisms"
        );
        let mat = match (&self.mat, &other.mat) {
            (MorMatrix::Rat(a), MorMatrix::Rat(b)) => MorMatrix::Rat(a.add(b)),
            (MorMatrix::Int(a), MorMatrix::Int(b)) => MorMatrix::Int(a.add(b)),
            _ => unreachable!(),
        };
        Mor::raw(&self.src, &self.dst, mat)
    }

    pub fn neg(&self) -> Mor {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Mor) -> Mor {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: i64) -> Mor {
        let mat = match &self.mat {
            MorMatrix::Rat(a) => MorMatrix::Rat(a.scale(&Rational::from(c))),
            MorMatrix::Int(a) => MorMatrix::Int(a.scale(&Integer::new(c))),
        };
        Mor::raw(&self.src, &self.dst, mat)
    }

    /// Sign `(-1)^k` applied.
    pub fn signed(&self, k: i64) -> Mor {
        if k.rem_euclid(2) == 0 {
            self.clone()
        } else {
            self.neg()
        }
    }

    /// Same matrix, re-read between different (compatible) endpoints.
    pub fn with_ends(&self, src: &Obj, dst: &Obj) -> Result<Mor> {
        Mor::new(src.clone(), dst.clone(), self.mat.clone())
    }
}

/// `g ∘ f`, checked.
pub fn compose(g: &Mor, f: &Mor) -> Result<Mor> {
    g.src.same_instance(&f.src)?;
    if f.dst != g.src {
        return Err(Error::Dimension(format!(
            "cannot compose {} -> {} after {} -> {}",
            g.src, g.dst, f.src, f.dst
        )));
    }
    Ok(g.after(f))
}

fn check_ab_columns(src: &Obj, dst: &Obj, m: &IntMatrix) -> Result<()> {
    let so = src.orders();
    let dord = dst.orders();
    for (j, a) in so.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (i, e) in dord.iter().enumerate() {
            let x = m.get(i, j).mul_ref(a);
            let ok = if e.is_zero() {
                x.is_zero()
            } else {
                e.divides(&x)
            };
            if !ok {
                return Err(Error::InvalidMorphism(format!(
                    "generator {j} of order {a} cannot map to {} in coordinate {i} of order {}",
                    m.get(i, j),
                    if e.is_zero() {
                        "infinity".to_string()
                    } else {
                        e.to_string()
                    }
                )));
            }
        }
    }
    Ok(())
}

impl fmt::Debug for Mor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Mor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.mat {
            MorMatrix::Rat(m) => write!(f, "{} -{}-> {}", self.src, m, self.dst),
            MorMatrix::Int(m) => write!(f, "{} -{}-> {}", self.src, m, self.dst),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn object_validation() {
        assert!(Obj::ab(0, &[4, 2]).is_err());
        assert!(Obj::ab(0, &[1]).is_err());
        assert!(Obj::ab(1, &[2, 4]).is_ok());
        let a = Obj::filt(2, &RatMatrix::from_i64_rows(&[&[2], &[4]])).unwrap();
        let b = Obj::filt(2, &RatMatrix::from_i64_rows(&[&[1, 3], &[2, 6]])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn ab_morphism_constraints() {
        let z = Obj::z();
        let z2 = Obj::z_mod(2);
        let z4 = Obj::z_mod(4);
        assert!(Mor::from_i64(&z2, &z, &[&[1]]).is_err());
        assert!(Mor::from_i64(&z2, &z4, &[&[1]]).is_err());
        let f = Mor::from_i64(&z2, &z4, &[&[6]]).unwrap();
        assert_eq!(f.int(), &IntMatrix::from_i64_rows(&[&[2]]));
        let three = Mor::from_i64(&z, &z, &[&[3]]).unwrap();
        let two = Mor::from_i64(&z, &z, &[&[2]]).unwrap();
        assert_eq!(
            compose(&three, &two).unwrap(),
            Mor::from_i64(&z, &z, &[&[6]]).unwrap()
        );
    }

    #[test]
    fn filt_morphism_constraint() {
        assert!(Mor::from_i64(&Obj::p1(), &Obj::p0(), &[&[1]]).is_err());
        assert!(Mor::from_i64(&Obj::p0(), &Obj::p1(), &[&[1]]).is_ok());
        assert!(Mor::from_i64(&Obj::p1(), &Obj::p0(), &[&[0]]).is_ok());
    }

    #[test]
    fn composition_identities() {
        let v = Obj::vect(2);
        let w = Obj::vect(3);
        let f = Mor::from_i64(&v, &w, &[&[1, 2], &[0, 1], &[3, 0]]).unwrap();
        assert_eq!(compose(&Mor::identity(&w), &f).unwrap(), f);
        assert!(compose(&Mor::zero(&w, &v), &f).unwrap().is_zero());
        assert!(compose(&f, &f).is_err());
    }
}
