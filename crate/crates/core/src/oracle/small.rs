//! Packed matrices over a small prime field, indexed by their base-p code.
//!
//! Entries are read row-major; the first entry is the most significant digit,
//! so ascending codes list matrices in lexicographic entry order.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::FieldDescriptor;
use crate::matrix::Matrix;

pub(crate) const MAX_ORDER: usize = 4;
pub(crate) type Entries = [u32; MAX_ORDER * MAX_ORDER];

#[derive(Debug, Clone)]
pub(crate) struct SmallField {
    pub p: u32,
    pub n: usize,
    pub size: u32,
    // p^(n*n - 1 - i) for entry i
    weights: Vec<u32>,
}

impl SmallField {
    /// Caller guarantees `p^(n*n)` fits the tractability bound.
    pub fn new(p: u32, n: usize) -> Self {
        let cells = n * n;
        let mut weights = vec![1u32; cells];
        for i in (0..cells.saturating_sub(1)).rev() {
            weights[i] = weights[i + 1] * p;
        }
        let size = if cells == 0 { 1 } else { weights[0] * p };
        SmallField { p, n, size, weights }
    }

    pub fn decode(&self, mut code: u32) -> Entries {
        let mut e = [0u32; MAX_ORDER * MAX_ORDER];
        for i in (0..self.n * self.n).rev() {
            e[i] = code % self.p;
            code /= self.p;
        }
        e
    }

    pub fn encode(&self, e: &Entries) -> u32 {
        (0..self.n * self.n).map(|i| e[i] * self.weights[i]).sum()
    }

    pub fn mul_entries(&self, a: &Entries, b: &Entries) -> Entries {
        let n = self.n;
        let p = self.p as u64;
        let mut out = [0u32; MAX_ORDER * MAX_ORDER];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u64;
                for l in 0..n {
                    acc += a[i * n + l] as u64 * b[l * n + j] as u64;
                }
                out[i * n + j] = (acc % p) as u32;
            }
        }
        out
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.encode(&self.mul_entries(&self.decode(a), &self.decode(b)))
    }

    pub fn identity(&self) -> u32 {
        let mut e = [0u32; MAX_ORDER * MAX_ORDER];
        for i in 0..self.n {
            e[i * self.n + i] = 1 % self.p;
        }
        self.encode(&e)
    }

    pub fn scale(&self, c: u32, a: u32) -> u32 {
        let mut e = self.decode(a);
        for x in e.iter_mut().take(self.n * self.n) {
            *x = ((*x as u64 * c as u64) % self.p as u64) as u32;
        }
        self.encode(&e)
    }

    fn inv(&self, a: u32) -> u32 {
        let p = self.p as u64;
        let (mut base, mut exp, mut acc) = (a as u64 % p, p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc as u32
    }

    /// Rank by plain Gaussian elimination on the residues.
    pub fn rank(&self, code: u32) -> usize {
        let n = self.n;
        let p = self.p as u64;
        let mut m = self.decode(code);
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| m[r * n + col] != 0) else {
                continue;
            };
            for j in 0..n {
                m.swap(rank * n + j, piv * n + j);
            }
            let inv = self.inv(m[rank * n + col]) as u64;
            for r in 0..n {
                if r != rank && m[r * n + col] != 0 {
                    let f = m[r * n + col] as u64 * inv % p;
                    for j in 0..n {
                        let sub = f * m[rank * n + j] as u64 % p;
                        m[r * n + j] = ((m[r * n + j] as u64 + p - sub) % p) as u32;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn to_matrix(&self, code: u32) -> Matrix {
        let field = FieldDescriptor::prime(self.p as u64).expect("domain modulus is prime");
        let e = self.decode(code);
        let entries: Vec<i64> = e[..self.n * self.n].iter().map(|&x| x as i64).collect();
        Matrix::from_i64(field, self.n, self.n, &entries)
    }

    #[cfg(test)]
    pub fn encode_matrix(&self, m: &Matrix) -> u32 {
        let mut e = [0u32; MAX_ORDER * MAX_ORDER];
        for (i, x) in m.entries().iter().enumerate() {
            e[i] = x.as_residue().expect("prime field entry") as u32;
        }
        self.encode(&e)
    }

    /// `(T, T^{-1})` for a generating set of `GL_n(F_p)`: the elementary
    /// transvections `I + E_ij`, plus `diag(g, 1, ..., 1)` for a primitive
    /// root `g` when `p > 2`.
    pub fn conjugators(&self) -> Vec<(Entries, Entries)> {
        let n = self.n;
        let p = self.p;
        let mut gens = Vec::new();
        let id = self.decode(self.identity());
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let mut t = id;
                t[i * n + j] = 1;
                let mut t_inv = id;
                t_inv[i * n + j] = p - 1;
                gens.push((t, t_inv));
            }
        }
        if p > 2 && n > 0 {
            let g = primitive_root(p);
            let mut d = id;
            d[0] = g;
            let mut d_inv = id;
            d_inv[0] = self.inv(g);
            gens.push((d, d_inv));
        }
        gens
    }

    pub fn conjugate(&self, code: u32, t: &Entries, t_inv: &Entries) -> u32 {
        let m = self.decode(code);
        self.encode(&self.mul_entries(&self.mul_entries(t, &m), t_inv))
    }
}

fn primitive_root(p: u32) -> u32 {
    let order = |g: u32| {
        let mut x = g as u64;
        let mut k = 1;
        while x != 1 {
            x = x * g as u64 % p as u64;
            k += 1;
        }
        k
    };
    (2..p).find(|&g| order(g) == p - 1).unwrap_or(1)
}

/// Fixed-size bitset over all codes of a domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct CodeSet {
    words: Vec<u64>,
}

impl CodeSet {
    pub fn new(size: u32) -> Self {
        CodeSet {
            words: vec![0; (size as usize).div_ceil(64)],
        }
    }

    pub fn insert(&mut self, code: u32) -> bool {
        let (w, b) = ((code / 64) as usize, code % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn contains(&self, code: u32) -> bool {
        self.words[(code / 64) as usize] & (1 << (code % 64)) != 0
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64u32)
                .filter(move |b| bits & (1 << b) != 0)
                .map(move |b| w as u32 * 64 + b)
        })
    }
}
