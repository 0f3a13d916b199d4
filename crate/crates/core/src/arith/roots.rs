use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type QPoly = Vec<BigRational>;

fn trim(p: &mut QPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn rem(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lc = b.last().unwrap();
    while r.len() >= b.len() {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() / lc;
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &c * bi;
        }
        trim(&mut r);
    }
    r
}

fn gcd(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    while !r1.is_empty() {
        let r = rem(&r0, &r1);
        r0 = std::mem::replace(&mut r1, r);
    }
    r0
}

fn quo(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lc = b.last().unwrap();
    let mut q = vec![BigRational::zero(); r.len().saturating_sub(db)];
    while r.len() >= b.len() {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() / lc;
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &c * bi;
        }
        q[k] = c;
        trim(&mut r);
    }
    q
}

fn derivative(p: &[BigRational]) -> QPoly {
    let mut d: QPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(i.into()))
        .collect();
    trim(&mut d);
    d
}

/// Positive multiple of `p` with coprime integer coefficients.
fn to_integer(p: &[BigRational]) -> Vec<BigInt> {
    let lcm = p.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

fn eval_int(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn sign_changes(seq: &[Vec<BigInt>], x: &BigInt) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|p| eval_int(p, x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Distinct rational roots of a polynomial over Q (coefficients low to
/// high), in increasing order.
pub fn rational_roots(p: &[BigRational]) -> Vec<BigRational> {
    let mut p = p.to_vec();
    trim(&mut p);
    if p.len() < 2 {
        return Vec::new();
    }
    let g = gcd(&p, &derivative(&p));
    let mut p = quo(&p, &g);
    let mut roots = Vec::new();
    if p[0].is_zero() {
        roots.push(BigRational::zero());
        let k = p.iter().position(|c| !c.is_zero()).unwrap();
        p.drain(..k);
    }
    if p.len() >= 2 {
        roots.extend(nonzero_roots(&p));
    }
    roots.sort();
    roots
}

/// Rational roots of a squarefree polynomial with nonzero constant term.
/// The polynomial is scaled to integer coefficients `a_i` and substituted
/// `y = z / a_n`, which gives a monic integer polynomial whose rational
/// roots are integers; those are isolated with a Sturm sequence.
fn nonzero_roots(p: &[BigRational]) -> Vec<BigRational> {
    let lcm = p.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let a: Vec<BigInt> = p.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let n = a.len() - 1;
    let an = a[n].clone();
    let mut g: Vec<BigInt> = (0..n).map(|i| &a[i] * num_traits::pow(an.clone(), n - 1 - i)).collect();
    g.push(BigInt::one());
    // Fujiwara bound: every root has modulus below 2 max |g_(n-k)|^(1/k)
    let bound = (1..=n)
        .map(|k| {
            let c = g[n - k].abs();
            let c = if k == n { (c + BigInt::one()) / BigInt::from(2) } else { c };
            c.nth_root(k as u32) + BigInt::one()
        })
        .max()
        .unwrap()
        * BigInt::from(2);

    let gq: QPoly = g.iter().cloned().map(BigRational::from_integer).collect();
    let mut seq_q = vec![gq.clone(), derivative(&gq)];
    while seq_q.last().unwrap().len() > 1 {
        let k = seq_q.len();
        let r: QPoly = rem(&seq_q[k - 2], &seq_q[k - 1]).into_iter().map(|c| -c).collect();
        if r.is_empty() {
            break;
        }
        seq_q.push(to_integer(&r).into_iter().map(BigRational::from_integer).collect());
    }
    let seq: Vec<Vec<BigInt>> = seq_q.iter().map(|p| to_integer(p)).collect();

    let mut found = Vec::new();
    let lo = -&bound - BigInt::one();
    let (vlo, vhi) = (sign_changes(&seq, &lo), sign_changes(&seq, &bound));
    let mut stack = vec![(lo, bound, vlo, vhi)];
    while let Some((lo, hi, vlo, vhi)) = stack.pop() {
        if vlo <= vhi {
            continue;
        }
        if &hi - &lo == BigInt::one() {
            if eval_int(&g, &hi).is_zero() {
                found.push(BigRational::new(hi, an.clone()));
            }
            continue;
        }
        let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
        let vmid = sign_changes(&seq, &mid);
        stack.push((lo, mid.clone(), vlo, vmid));
        stack.push((mid, hi, vmid, vhi));
    }
    found
}
