use super::group::{AbelianGroup, GroupElement};
use super::lattice::ModLattice;
use super::snf::smith;
use super::subgroup::Subgroup;
use super::subset::FiniteSubset;
use super::AbelianError;

#[derive(Clone, Debug)]
enum Map {
    /// `q_t = (x·V)_{keep[t]} mod d_t`; lifts use rows of `V⁻¹`.
    Smith { v: Vec<Vec<i128>>, v_inv: Vec<Vec<i128>>, keep: Vec<usize>, moduli: Vec<i128> },
    /// Forget the listed-out coordinates of `ℤ^r`.
    DropCoords { keep: Vec<usize> },
    /// Apply a base quotient in every coordinate of a direct sum.
    PerCoordinate(Box<Map>),
}

/// `A / B` with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    source: AbelianGroup,
    target: AbelianGroup,
    map: Map,
}

fn smith_map(moduli: &[i128], lattice: &ModLattice) -> (Map, Vec<u64>) {
    let k = moduli.len();
    let s = smith(&lattice.square_basis(), k);
    let mut keep = Vec::new();
    let mut out = Vec::new();
    for (i, &d) in s.diag.iter().enumerate() {
        if d != 1 {
            keep.push(i);
            out.push(d);
        }
    }
    let factors = out.iter().map(|&d| d as u64).collect();
    (Map::Smith { v: s.v, v_inv: s.v_inv, keep, moduli: out }, factors)
}

impl Quotient {
    pub fn new(group: &AbelianGroup, b: &Subgroup) -> Result<Self, AbelianError> {
        if b.group() != group {
            return Err(AbelianError::GroupMismatch(group.to_string(), b.group().to_string()));
        }
        match group {
            AbelianGroup::FiniteProduct { factors } => {
                let moduli: Vec<i128> = factors.iter().map(|&n| n as i128).collect();
                let gens = b.generators()?;
                let lat = ModLattice::from_rows(
                    moduli.clone(),
                    gens.iter().map(|g| match g {
                        GroupElement::Dense(v) => v.clone(),
                        _ => unreachable!(),
                    }),
                );
                let (map, factors) = smith_map(&moduli, &lat);
                Ok(Quotient { source: group.clone(), target: AbelianGroup::FiniteProduct { factors }, map })
            }
            AbelianGroup::FreeZ { rank } => {
                let gens: Vec<Vec<i128>> = b
                    .generators()?
                    .into_iter()
                    .map(|g| match g {
                        GroupElement::Dense(v) => v,
                        _ => unreachable!(),
                    })
                    .collect();
                let lat = ModLattice::from_rows(vec![0; *rank], gens.clone());
                if lat.index().is_some() {
                    let (map, factors) = smith_map(&vec![0; *rank], &lat);
                    return Ok(Quotient { source: group.clone(), target: AbelianGroup::FiniteProduct { factors }, map });
                }
                // Coordinate sublattice: generated by unit vectors.
                let mut dropped = vec![false; *rank];
                for g in &gens {
                    let nz: Vec<usize> = (0..*rank).filter(|&i| g[i] != 0).collect();
                    if nz.len() != 1 || g[nz[0]].abs() != 1 {
                        return Err(AbelianError::UnsupportedQuotient(format!(
                            "{b:?} is neither of finite index nor a coordinate sublattice"
                        )));
                    }
                    dropped[nz[0]] = true;
                }
                let keep: Vec<usize> = (0..*rank).filter(|&i| !dropped[i]).collect();
                Ok(Quotient {
                    source: group.clone(),
                    target: AbelianGroup::FreeZ { rank: keep.len() },
                    map: Map::DropCoords { keep },
                })
            }
            AbelianGroup::DirectSum { base, index } => {
                let Some(base_gens) = b.base_generators() else {
                    return Err(AbelianError::UnsupportedQuotient(
                        "direct sums only quotient by per-coordinate subgroups".into(),
                    ));
                };
                let moduli: Vec<i128> = base.iter().map(|&n| n as i128).collect();
                let lat = ModLattice::from_rows(
                    moduli.clone(),
                    base_gens.into_iter().map(|r| r.into_iter().map(|e| e as i128).collect()),
                );
                let (map, factors) = smith_map(&moduli, &lat);
                Ok(Quotient {
                    source: group.clone(),
                    target: AbelianGroup::DirectSum { base: factors, index: index.clone() },
                    map: Map::PerCoordinate(Box::new(map)),
                })
            }
        }
    }

    pub fn source(&self) -> &AbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &AbelianGroup {
        &self.target
    }

    fn project_vec(map: &Map, x: &[i128]) -> Vec<i128> {
        match map {
            Map::Smith { v, keep, moduli, .. } => keep
                .iter()
                .zip(moduli)
                .map(|(&c, &d)| {
                    let s: i128 = x.iter().zip(v).map(|(xi, row)| xi * row[c]).sum();
                    if d > 0 {
                        s.rem_euclid(d)
                    } else {
                        s
                    }
                })
                .collect(),
            Map::DropCoords { keep } => keep.iter().map(|&i| x[i]).collect(),
            Map::PerCoordinate(_) => unreachable!(),
        }
    }

    fn lift_vec(map: &Map, y: &[i128], dim: usize) -> Vec<i128> {
        match map {
            Map::Smith { v_inv, keep, .. } => {
                let mut out = vec![0; dim];
                for (&c, &yt) in keep.iter().zip(y) {
                    for (o, e) in out.iter_mut().zip(&v_inv[c]) {
                        *o += yt * e;
                    }
                }
                out
            }
            Map::DropCoords { keep } => {
                let mut out = vec![0; dim];
                for (&i, &yt) in keep.iter().zip(y) {
                    out[i] = yt;
                }
                out
            }
            Map::PerCoordinate(_) => unreachable!(),
        }
    }

    pub fn project(&self, x: &GroupElement) -> GroupElement {
        match (&self.map, x) {
            (Map::PerCoordinate(inner), GroupElement::Sparse(m)) => GroupElement::sparse(m.iter().map(|(k, v)| {
                let w: Vec<i128> = v.iter().map(|&e| e as i128).collect();
                (k.clone(), Self::project_vec(inner, &w).into_iter().map(|e| e as i64).collect())
            })),
            (map, GroupElement::Dense(v)) => GroupElement::Dense(Self::project_vec(map, v)),
            _ => panic!("element does not match quotient source"),
        }
    }

    /// A preimage of `y` under the projection.
    pub fn lift(&self, y: &GroupElement) -> GroupElement {
        let dim = self.source.coordinate_moduli().len();
        let raw = match (&self.map, y) {
            (Map::PerCoordinate(inner), GroupElement::Sparse(m)) => GroupElement::Sparse(
                m.iter()
                    .map(|(k, v)| {
                        let w: Vec<i128> = v.iter().map(|&e| e as i128).collect();
                        (k.clone(), Self::lift_vec(inner, &w, dim).into_iter().map(|e| e as i64).collect())
                    })
                    .collect(),
            ),
            (map, GroupElement::Dense(v)) => GroupElement::Dense(Self::lift_vec(map, v, dim)),
            _ => panic!("element does not match quotient target"),
        };
        self.source.normalize(raw).expect("lift stays in the source")
    }

    pub fn project_set(&self, x: &FiniteSubset) -> FiniteSubset {
        x.map(&self.target, |e| self.project(e))
    }

    pub fn project_subgroup(&self, b: &Subgroup) -> Result<Subgroup, AbelianError> {
        if let (Some(gens), Map::PerCoordinate(inner)) = (b.base_generators(), &self.map) {
            let img: Vec<Vec<i64>> = gens
                .iter()
                .map(|g| {
                    let w: Vec<i128> = g.iter().map(|&e| e as i128).collect();
                    Self::project_vec(inner, &w).into_iter().map(|e| e as i64).collect()
                })
                .collect();
            return Subgroup::per_coordinate(&self.target, &img);
        }
        Subgroup::generated(&self.target, b.generators()?.iter().map(|g| self.project(g)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{MElement, Monoid};

    #[test]
    fn z4_by_two() {
        let g = AbelianGroup::cyclic(4);
        let b = Subgroup::generated(&g, [GroupElement::scalar(2)]).unwrap();
        let q = Quotient::new(&g, &b).unwrap();
        assert_eq!(q.target(), &AbelianGroup::cyclic(2));
        for x in 0..4 {
            let p = q.project(&GroupElement::scalar(x));
            assert_eq!(p == q.target().zero(), x % 2 == 0);
            assert_eq!(q.project(&q.lift(&p)), p);
        }
    }

    #[test]
    fn z_by_five() {
        let g = AbelianGroup::integers();
        let b = Subgroup::generated(&g, [GroupElement::scalar(5)]).unwrap();
        let q = Quotient::new(&g, &b).unwrap();
        assert_eq!(q.target(), &AbelianGroup::cyclic(5));
        assert_eq!(q.project(&GroupElement::scalar(7)), q.project(&GroupElement::scalar(2)));
    }

    #[test]
    fn direct_sum_by_double() {
        let g = AbelianGroup::direct_sum(vec![4], Monoid::integers(1)).unwrap();
        let b = Subgroup::multiple(&g, 2);
        let q = Quotient::new(&g, &b).unwrap();
        assert_eq!(q.target(), &AbelianGroup::direct_sum(vec![2], Monoid::integers(1)).unwrap());
        let x = GroupElement::sparse([(MElement(vec![0]), vec![3]), (MElement(vec![2]), vec![2])]);
        assert_eq!(q.project(&x), GroupElement::unit(MElement(vec![0]), vec![1]));
    }

    #[test]
    fn unsupported_free_quotient() {
        let g = AbelianGroup::FreeZ { rank: 2 };
        let b = Subgroup::generated(&g, [GroupElement::dense(vec![2, 0])]).unwrap();
        assert!(Quotient::new(&g, &b).is_err());
        let c = Subgroup::generated(&g, [GroupElement::dense(vec![0, 1])]).unwrap();
        let q = Quotient::new(&g, &c).unwrap();
        assert_eq!(q.target(), &AbelianGroup::integers());
    }

    #[test]
    fn product_quotient_orders() {
        let g = AbelianGroup::finite(vec![4, 6]).unwrap();
        let b = Subgroup::generated(&g, [GroupElement::dense(vec![2, 3])]).unwrap();
        let q = Quotient::new(&g, &b).unwrap();
        assert_eq!(q.target().order().unwrap(), 12u32.into());
        for x in g.elements(100).unwrap() {
            let p = q.project(&x);
            assert!(q.target().contains(&p));
            assert_eq!(p == q.target().zero(), b.contains(&x));
        }
    }
}
