//! Named group builders: the classical families, PSL(2,q) on the projective
//! line, affine groups AGL(1,q), and translation-by-matrix semidirect products.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{is_prime, prime_power, FieldElement, GaloisField};
use crate::perm::{gcd, GroupTable, Permutation};

/// Prime powers accepted by [`psl2`].
pub const PSL2_SUPPORTED: [u32; 9] = [4, 5, 7, 8, 9, 11, 13, 17, 27];

pub type Matrix = Vec<Vec<u32>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupRecipe {
    Cyclic(usize),
    /// Dihedral group of the given *order* (D14 has 14 elements).
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    ElementaryAbelian {
        p: u32,
        k: u32,
    },
    Quaternion8,
    Psl2(u32),
    Affine(u32),
    MatrixSemidirect {
        p: u32,
        k: u32,
        matrices: Vec<Matrix>,
    },
    DirectProduct(Vec<GroupRecipe>),
    ExplicitGenerators {
        degree: usize,
        generators: Vec<String>,
    },
}

impl GroupRecipe {
    /// C3² : Q8, the point stabilizer acting as the quaternion group in GL(2,3).
    pub fn u3_2_model() -> Self {
        GroupRecipe::MatrixSemidirect {
            p: 3,
            k: 2,
            matrices: q8_matrices().to_vec(),
        }
    }

    /// C3² : C8 with the point stabilizer generated by a single matrix of order 8.
    pub fn c3sq_c8_matrix_model() -> Self {
        GroupRecipe::MatrixSemidirect {
            p: 3,
            k: 2,
            matrices: vec![order8_matrix()],
        }
    }

    pub fn build(&self) -> Result<GroupTable> {
        named(self)
    }
}

/// Generators `i`, `j` of a quaternion subgroup of GL(2,3).
pub fn q8_matrices() -> [Matrix; 2] {
    [vec![vec![0, 2], vec![1, 0]], vec![vec![1, 1], vec![1, 2]]]
}

/// Companion matrix of x² + x + 2, of multiplicative order 8 over GF(3).
pub fn order8_matrix() -> Matrix {
    vec![vec![0, 1], vec![1, 2]]
}

impl fmt::Display for GroupRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupRecipe::Cyclic(n) => write!(f, "cyclic_{n}"),
            GroupRecipe::Dihedral(n) => write!(f, "dihedral_{n}"),
            GroupRecipe::Symmetric(n) => write!(f, "symmetric_{n}"),
            GroupRecipe::Alternating(n) => write!(f, "alternating_{n}"),
            GroupRecipe::ElementaryAbelian { p, k } => write!(f, "elementary_abelian_{p}_{k}"),
            GroupRecipe::Quaternion8 => write!(f, "quaternion8"),
            GroupRecipe::Psl2(q) => write!(f, "psl2_{q}"),
            GroupRecipe::Affine(q) => write!(f, "affine_{q}"),
            GroupRecipe::MatrixSemidirect { .. } if *self == GroupRecipe::u3_2_model() => {
                write!(f, "u3_2")
            }
            GroupRecipe::MatrixSemidirect { .. }
                if *self == GroupRecipe::c3sq_c8_matrix_model() =>
            {
                write!(f, "c3sq_c8")
            }
            GroupRecipe::MatrixSemidirect { p, k, matrices } => {
                write!(f, "matrix_semidirect_{p}_{k}[")?;
                for (i, m) in matrices.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    let rows: Vec<String> = m
                        .iter()
                        .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
                        .collect();
                    write!(f, "{}", rows.join("/"))?;
                }
                write!(f, "]")
            }
            GroupRecipe::DirectProduct(parts) => {
                write!(f, "direct_product(")?;
                for (i, r) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{r}")?;
                }
                write!(f, ")")
            }
            GroupRecipe::ExplicitGenerators { degree, generators } => {
                write!(f, "explicit_{degree}[{}]", generators.join(", "))
            }
        }
    }
}

impl FromStr for GroupRecipe {
    type Err = Error;

    /// Accepts identifiers such as `psl2_17`, `psl2 17`, `elementary_abelian_3_2`,
    /// `u3_2`, `c3sq_c8` and `direct_product(cyclic_2,symmetric_3)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRecipe(s.to_string());
        let text = s.trim();
        if let Some(inner) = text
            .strip_prefix("direct_product(")
            .and_then(|r| r.strip_suffix(')'))
        {
            let mut parts = Vec::new();
            let mut depth = 0;
            let mut start = 0;
            for (i, c) in inner.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    ',' if depth == 0 => {
                        parts.push(inner[start..i].parse()?);
                        start = i + 1;
                    }
                    _ => {}
                }
            }
            parts.push(inner[start..].parse()?);
            return Ok(GroupRecipe::DirectProduct(parts));
        }
        let norm: String = text
            .split_whitespace()
            .collect::<Vec<_>>()
            .join("_")
            .to_ascii_lowercase();
        match norm.as_str() {
            "quaternion8" | "q8" => return Ok(GroupRecipe::Quaternion8),
            "u3_2" => return Ok(GroupRecipe::u3_2_model()),
            "c3sq_c8" => return Ok(GroupRecipe::c3sq_c8_matrix_model()),
            _ => {}
        }
        const FAMILIES: [&str; 7] = [
            "elementary_abelian",
            "alternating",
            "symmetric",
            "dihedral",
            "cyclic",
            "affine",
            "psl2",
        ];
        let family = FAMILIES
            .iter()
            .find(|f| norm.starts_with(*f))
            .ok_or_else(bad)?;
        let args: Vec<u32> = norm[family.len()..]
            .split('_')
            .filter(|a| !a.is_empty())
            .map(|a| a.parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let one = || match args.as_slice() {
            [n] => Ok(*n),
            _ => Err(bad()),
        };
        Ok(match *family {
            "elementary_abelian" => match args.as_slice() {
                [p, k] => GroupRecipe::ElementaryAbelian { p: *p, k: *k },
                _ => return Err(bad()),
            },
            "alternating" => GroupRecipe::Alternating(one()? as usize),
            "symmetric" => GroupRecipe::Symmetric(one()? as usize),
            "dihedral" => GroupRecipe::Dihedral(one()? as usize),
            "cyclic" => GroupRecipe::Cyclic(one()? as usize),
            "affine" => GroupRecipe::Affine(one()?),
            _ => GroupRecipe::Psl2(one()?),
        })
    }
}

fn perm(images: Vec<u32>) -> Permutation {
    Permutation::from_images(images).expect("constructed maps are bijections")
}

fn cycle_on(degree: usize, points: &[usize]) -> Permutation {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for w in 0..points.len() {
        images[points[w]] = points[(w + 1) % points.len()] as u32;
    }
    perm(images)
}

fn generators_of(recipe: &GroupRecipe) -> Result<Vec<Permutation>> {
    let invalid = || Error::InvalidRecipe(recipe.to_string());
    Ok(match recipe {
        GroupRecipe::Cyclic(n) => {
            if *n == 0 {
                return Err(invalid());
            }
            vec![cycle_on(*n, &(0..*n).collect::<Vec<_>>())]
        }
        GroupRecipe::Dihedral(n) => {
            if *n < 2 || n % 2 != 0 {
                return Err(invalid());
            }
            match n / 2 {
                1 => vec![cycle_on(2, &[0, 1])],
                2 => vec![perm(vec![1, 0, 3, 2]), perm(vec![2, 3, 0, 1])],
                m => vec![
                    cycle_on(m, &(0..m).collect::<Vec<_>>()),
                    perm((0..m).map(|i| ((m - i) % m) as u32).collect()),
                ],
            }
        }
        GroupRecipe::Symmetric(n) => match *n {
            0 => return Err(invalid()),
            1 => vec![Permutation::identity(1)],
            2 => vec![cycle_on(2, &[0, 1])],
            n => vec![
                cycle_on(n, &[0, 1]),
                cycle_on(n, &(0..n).collect::<Vec<_>>()),
            ],
        },
        GroupRecipe::Alternating(n) => match *n {
            0 => return Err(invalid()),
            1 | 2 => vec![Permutation::identity(*n)],
            n => (2..n).map(|i| cycle_on(n, &[0, 1, i])).collect(),
        },
        GroupRecipe::ElementaryAbelian { p, k } => {
            if !is_prime(*p) || *k == 0 {
                return Err(invalid());
            }
            let (p, k) = (*p as usize, *k as usize);
            (0..k)
                .map(|b| cycle_on(p * k, &(b * p..(b + 1) * p).collect::<Vec<_>>()))
                .collect()
        }
        GroupRecipe::Quaternion8 => quaternion_regular(),
        GroupRecipe::Psl2(q) => psl2_generators(*q)?,
        GroupRecipe::Affine(q) => affine_generators(*q)?,
        GroupRecipe::MatrixSemidirect { p, k, matrices } => {
            matrix_semidirect_generators(*p, *k, matrices)?
        }
        GroupRecipe::DirectProduct(parts) => {
            if parts.is_empty() {
                return Err(invalid());
            }
            let gens: Vec<Vec<Permutation>> =
                parts.iter().map(generators_of).collect::<Result<_>>()?;
            let degrees: Vec<usize> = gens.iter().map(|g| g[0].degree()).collect();
            let total: usize = degrees.iter().sum();
            let mut out = Vec::new();
            let mut offset = 0;
            for (gs, d) in gens.iter().zip(&degrees) {
                for g in gs {
                    let mut images: Vec<u32> = (0..total as u32).collect();
                    for x in 0..*d {
                        images[offset + x] = (offset + g.apply(x)) as u32;
                    }
                    out.push(perm(images));
                }
                offset += d;
            }
            out
        }
        GroupRecipe::ExplicitGenerators { degree, generators } => {
            if generators.is_empty() {
                return Err(Error::NoGenerators);
            }
            generators
                .iter()
                .map(|g| Permutation::parse_cycles(g, *degree))
                .collect::<Result<_>>()?
        }
    })
}

/// Builds the group a recipe names.
pub fn named(recipe: &GroupRecipe) -> Result<GroupTable> {
    let table = GroupTable::generate(&generators_of(recipe)?)?;
    if let GroupRecipe::Psl2(q) = recipe {
        let q = *q as usize;
        let expected = q * (q * q - 1) / gcd(2, q - 1);
        if table.order() != expected {
            return Err(Error::InvalidRecipe(format!(
                "psl2_{q} generated order {} instead of {expected}",
                table.order()
            )));
        }
    }
    Ok(table)
}

fn quaternion_regular() -> Vec<Permutation> {
    // elements indexed 2*unit + sign, unit ∈ {1, i, j, k}; sign 1 means negative
    const TABLE: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let mul = |a: usize, b: usize| -> usize {
        let (u, neg) = TABLE[a / 2][b / 2];
        2 * u + ((a % 2 == 1) ^ (b % 2 == 1) ^ neg) as usize
    };
    // right multiplication by i and j: x ↦ x·g
    [2usize, 4]
        .iter()
        .map(|&g| perm((0..8).map(|x| mul(x, g) as u32).collect()))
        .collect()
}

fn field_for(q: u32) -> Result<GaloisField> {
    let (p, k) = prime_power(q).ok_or(Error::UnsupportedField(q))?;
    if q > 256 {
        return Err(Error::UnsupportedField(q));
    }
    GaloisField::new(p, k)
}

fn psl2_generators(q: u32) -> Result<Vec<Permutation>> {
    if !PSL2_SUPPORTED.contains(&q) {
        return Err(Error::InvalidRecipe(format!(
            "psl2_{q}: q must be one of {PSL2_SUPPORTED:?}"
        )));
    }
    let f = field_for(q)?;
    let inf = q;
    let lambda = f.primitive_element();
    let square = f.mul(lambda, lambda);
    let on_line = |map: &dyn Fn(FieldElement) -> FieldElement, at_inf: u32| {
        let mut images: Vec<u32> = f.elements().map(|x| map(x).0 as u32).collect();
        images.push(at_inf);
        perm(images)
    };
    let translate = on_line(&|x| f.add(x, f.one()), inf);
    let scale = on_line(&|x| f.mul(square, x), inf);
    let mut invert: Vec<u32> = f
        .elements()
        .map(|x| match f.inv(x) {
            Some(xi) => f.neg(xi).0 as u32,
            None => inf,
        })
        .collect();
    invert.push(0);
    Ok(vec![translate, scale, perm(invert)])
}

/// PSL(2,q) acting on the q+1 points of the projective line; point `q` is ∞.
pub fn psl2(q: u32) -> Result<GroupTable> {
    named(&GroupRecipe::Psl2(q))
}

fn affine_generators(q: u32) -> Result<Vec<Permutation>> {
    let f = field_for(q)?;
    let lambda = f.primitive_element();
    Ok(vec![
        perm(f.elements().map(|x| f.add(x, f.one()).0 as u32).collect()),
        perm(f.elements().map(|x| f.mul(lambda, x).0 as u32).collect()),
    ])
}

/// AGL(1,q): all maps x ↦ ax + b with a ≠ 0, acting on GF(q).
pub fn affine(q: u32) -> Result<GroupTable> {
    named(&GroupRecipe::Affine(q))
}

fn determinant_mod(m: &Matrix, p: u32) -> u32 {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|r| r.iter().map(|&x| (x % p) as u64).collect())
        .collect();
    let p = p as u64;
    let mut det = 1u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| a[r][col] != 0) else {
            return 0;
        };
        if pivot != col {
            a.swap(pivot, col);
            det = (p - det) % p;
        }
        det = det * a[col][col] % p;
        let inv = pow(a[col][col], p - 2);
        for r in col + 1..n {
            let factor = a[r][col] * inv % p;
            for c in col..n {
                a[r][c] = (a[r][c] + p * p - factor * a[col][c] % p) % p;
            }
        }
    }
    det as u32
}

fn matrix_semidirect_generators(p: u32, k: u32, matrices: &[Matrix]) -> Result<Vec<Permutation>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let n = p
        .checked_pow(k)
        .filter(|&n| n <= 4096)
        .ok_or(Error::UnsupportedField(u32::MAX))?;
    let (pu, ku) = (p as usize, k as usize);
    let digits = |mut v: usize| -> Vec<usize> {
        (0..ku)
            .map(|_| {
                let d = v % pu;
                v /= pu;
                d
            })
            .collect()
    };
    let value = |d: &[usize]| d.iter().rev().fold(0, |acc, &x| acc * pu + x % pu);
    let mut gens = Vec::new();
    for i in 0..ku {
        gens.push(perm(
            (0..n as usize)
                .map(|v| {
                    let mut d = digits(v);
                    d[i] = (d[i] + 1) % pu;
                    value(&d) as u32
                })
                .collect(),
        ));
    }
    for m in matrices {
        if m.len() != ku || m.iter().any(|r| r.len() != ku) {
            return Err(Error::InvalidRecipe(format!("matrix must be {k}×{k}")));
        }
        if determinant_mod(m, p) == 0 {
            return Err(Error::SingularMatrix);
        }
        gens.push(perm(
            (0..n as usize)
                .map(|v| {
                    let d = digits(v);
                    let image: Vec<usize> = m
                        .iter()
                        .map(|row| row.iter().zip(&d).map(|(&a, &x)| a as usize * x).sum())
                        .collect();
                    value(&image) as u32
                })
                .collect(),
        ));
    }
    Ok(gens)
}

/// Translations of GF(p)^k extended by the linear maps `matrices`.
pub fn matrix_semidirect(p: u32, k: u32, matrices: &[Matrix]) -> Result<GroupTable> {
    named(&GroupRecipe::MatrixSemidirect {
        p,
        k,
        matrices: matrices.to_vec(),
    })
}
