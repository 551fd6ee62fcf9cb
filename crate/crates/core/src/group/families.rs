//! Permutation generators for the standard families.

use super::FiniteGroup;
use crate::perm::Permutation;
use crate::{is_prime, Error, Result};

fn cycle(degree: usize, pts: impl IntoIterator<Item = usize>) -> Permutation {
    let c: Vec<usize> = pts.into_iter().collect();
    Permutation::from_cycles(degree, &[c]).expect("valid cycle")
}

pub fn trivial_group() -> FiniteGroup {
    FiniteGroup::from_generators(&[Permutation::identity(1)], 1).expect("trivial group")
}

/// `Z_n` acting regularly on `n` points.
pub fn cyclic(n: usize, cap: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidInput("cyclic group needs n >= 1".into()));
    }
    if n == 1 {
        return Ok(trivial_group());
    }
    FiniteGroup::from_generators(&[cycle(n, 0..n)], cap)
}

/// Symmetries of the regular `n`-gon, order `2n`.
pub fn dihedral(n: usize, cap: usize) -> Result<FiniteGroup> {
    match n {
        0 => Err(Error::InvalidInput("dihedral group needs n >= 1".into())),
        1 => cyclic(2, cap),
        2 => elementary_abelian(2, 2, cap),
        _ => {
            let rot = cycle(n, 0..n);
            let mut images: Vec<u32> = (0..n as u32).collect();
            for (i, im) in images.iter_mut().enumerate() {
                *im = ((n - i) % n) as u32;
            }
            let refl = Permutation::from_images(images)?;
            FiniteGroup::from_generators(&[rot, refl], cap)
        }
    }
}

pub fn symmetric(n: usize, cap: usize) -> Result<FiniteGroup> {
    match n {
        0 => Err(Error::InvalidInput("symmetric group needs n >= 1".into())),
        1 => Ok(trivial_group()),
        2 => FiniteGroup::from_generators(&[cycle(2, [0, 1])], cap),
        _ => FiniteGroup::from_generators(&[cycle(n, [0, 1]), cycle(n, 0..n)], cap),
    }
}

pub fn alternating(n: usize, cap: usize) -> Result<FiniteGroup> {
    match n {
        0 => Err(Error::InvalidInput("alternating group needs n >= 1".into())),
        1 | 2 => Ok(trivial_group()),
        _ => {
            let gens: Vec<Permutation> = (2..n).map(|k| cycle(n, [0, 1, k])).collect();
            FiniteGroup::from_generators(&gens, cap)
        }
    }
}

/// `Z_p^k` as `k` disjoint `p`-cycles.
pub fn elementary_abelian(p: usize, k: usize, cap: usize) -> Result<FiniteGroup> {
    if !is_prime(p as u64) || k == 0 {
        return Err(Error::InvalidInput(format!(
            "elementary abelian group needs a prime and k >= 1 (got {p}, {k})"
        )));
    }
    let degree = p * k;
    let gens: Vec<Permutation> = (0..k).map(|b| cycle(degree, b * p..(b + 1) * p)).collect();
    FiniteGroup::from_generators(&gens, cap)
}

/// The quaternion group of order 8 in its regular representation.
pub fn quaternion8(cap: usize) -> Result<FiniteGroup> {
    let i = Permutation::from_cycles(8, &[vec![0, 1, 3, 6], vec![2, 5, 7, 4]])?;
    let j = Permutation::from_cycles(8, &[vec![0, 2, 3, 7], vec![1, 4, 6, 5]])?;
    FiniteGroup::from_generators(&[i, j], cap)
}

/// `Z_p wr Z_p` on `p^2` points: a `p`-cycle on the first block and the
/// block rotation.
pub fn wreath_cyclic(p: usize, cap: usize) -> Result<FiniteGroup> {
    if !is_prime(p as u64) {
        return Err(Error::InvalidInput(format!("wreath product needs a prime, got {p}")));
    }
    let degree = p * p;
    let base = cycle(degree, 0..p);
    let mut images = vec![0u32; degree];
    for (i, im) in images.iter_mut().enumerate() {
        *im = ((i + p) % degree) as u32;
    }
    let top = Permutation::from_images(images)?;
    FiniteGroup::from_generators(&[base, top], cap)
}

pub fn primitive_root(p: u64) -> u64 {
    (2..p)
        .find(|&a| {
            let mut x = 1;
            for k in 1..p - 1 {
                x = x * a % p;
                if x == 1 && k < p - 1 {
                    return false;
                }
            }
            true
        })
        .unwrap_or(1)
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// `PSL(2, p)` acting on the projective line `{0, .., p-1, ∞ = p}`,
/// generated by `x ↦ x+1`, `x ↦ a²x` and `x ↦ -1/x`.
pub fn psl2(p: u64, cap: usize) -> Result<FiniteGroup> {
    if !is_prime(p) || p < 5 {
        return Err(Error::UnsupportedPrime(p as u32));
    }
    let inf = p as u32;
    let n = p as usize + 1;
    let a = primitive_root(p);
    let a2 = a * a % p;
    let mut t = vec![inf; n];
    let mut d = vec![inf; n];
    let mut w = vec![0u32; n];
    for x in 0..p {
        t[x as usize] = ((x + 1) % p) as u32;
        d[x as usize] = (a2 * x % p) as u32;
        w[x as usize] = if x == 0 {
            inf
        } else {
            ((p - inv_mod(x, p)) % p) as u32
        };
    }
    w[p as usize] = 0;
    let gens = [
        Permutation::from_images(t)?,
        Permutation::from_images(d)?,
        Permutation::from_images(w)?,
    ];
    FiniteGroup::from_generators(&gens, cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: usize = 50_000;

    #[test]
    fn orders() {
        assert_eq!(cyclic(6, CAP).unwrap().order(), 6);
        assert_eq!(dihedral(4, CAP).unwrap().order(), 8);
        assert_eq!(symmetric(4, CAP).unwrap().order(), 24);
        assert_eq!(alternating(5, CAP).unwrap().order(), 60);
        assert_eq!(alternating(6, CAP).unwrap().order(), 360);
        assert_eq!(elementary_abelian(2, 4, CAP).unwrap().order(), 16);
        assert_eq!(wreath_cyclic(3, CAP).unwrap().order(), 81);
        assert_eq!(wreath_cyclic(2, CAP).unwrap().order(), 8);
        for p in [5u64, 7, 11, 13] {
            assert_eq!(psl2(p, CAP).unwrap().order() as u64, p * (p * p - 1) / 2);
        }
    }

    #[test]
    fn quaternion_has_unique_involution() {
        let q = quaternion8(CAP).unwrap();
        assert_eq!(q.order(), 8);
        assert!(!q.is_abelian());
        assert_eq!(q.all_ids().filter(|&x| q.elem_order(x) == 2).count(), 1);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(5), 2);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(13), 2);
        assert_eq!(inv_mod(3, 7), 5);
    }

    #[test]
    fn unsupported_prime() {
        assert_eq!(psl2(4, CAP).unwrap_err(), Error::UnsupportedPrime(4));
    }
}
