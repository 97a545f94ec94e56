//! Named-graph constructors with deterministic vertex orderings.
//!
//! Spec strings are `name` or `name(p1,p2)`. Supported families:
//!
//! * `cycle(n)` — vertices 0..n around the cycle, n >= 3
//! * `complete(n)`
//! * `complete_bipartite(a,b)` — part A is 0..a, part B is a..a+b
//! * `petersen` — outer cycle 0..5, inner pentagram 5..10, spokes i -- i+5
//! * `paley(q)` — q a prime power with q = 1 mod 4; vertices are the
//!   elements of F_q as polynomial representatives c_0 + c_1 t + ... with
//!   vertex index sum(c_j * p^j); u ~ v iff u - v is a nonzero square
//! * `hamming(d,q)` — vertices are words in [q]^d indexed by
//!   sum(digit_j * q^j); adjacent iff Hamming distance 1
//! * `hypercube(d)` — alias for hamming(d,2)

use super::Graph;
use crate::error::{Error, Result};

/// Builds a named graph from a spec string.
pub fn named_graph(spec: &str) -> Result<Graph> {
    let spec = spec.trim();
    let (name, params) = match spec.find('(') {
        Some(open) => {
            let close = spec
                .rfind(')')
                .ok_or_else(|| Error::NamedGraph(format!("missing ')' in '{spec}'")))?;
            if close != spec.len() - 1 {
                return Err(Error::NamedGraph(format!("trailing text in '{spec}'")));
            }
            let args: Vec<usize> = spec[open + 1..close]
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::NamedGraph(format!("bad parameter '{t}' in '{spec}'")))
                })
                .collect::<Result<_>>()?;
            (&spec[..open], args)
        }
        None => (spec, Vec::new()),
    };

    let arity = |k: usize| -> Result<()> {
        if params.len() == k {
            Ok(())
        } else {
            Err(Error::NamedGraph(format!(
                "'{name}' takes {k} parameter(s), got {}",
                params.len()
            )))
        }
    };

    match name {
        "cycle" => {
            arity(1)?;
            cycle(params[0])
        }
        "complete" => {
            arity(1)?;
            complete(params[0])
        }
        "complete_bipartite" => {
            arity(2)?;
            complete_bipartite(params[0], params[1])
        }
        "petersen" => {
            arity(0)?;
            petersen()
        }
        "paley" => {
            arity(1)?;
            paley(params[0])
        }
        "hamming" => {
            arity(2)?;
            hamming(params[0], params[1])
        }
        "hypercube" => {
            arity(1)?;
            hamming(params[0], 2)
        }
        _ => Err(Error::NamedGraph(format!("unknown family '{name}'"))),
    }
}

fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::NamedGraph(format!("cycle requires n >= 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

fn complete(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::NamedGraph("complete requires n >= 1".into()));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges)
}

fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a < 1 || b < 1 {
        return Err(Error::NamedGraph(
            "complete_bipartite requires both parts nonempty".into(),
        ));
    }
    let mut edges = Vec::new();
    for u in 0..a {
        for v in 0..b {
            edges.push((u, a + v));
        }
    }
    Graph::from_edges(a + b, &edges)
}

fn petersen() -> Result<Graph> {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5)); // outer cycle
        edges.push((5 + i, 5 + (i + 2) % 5)); // inner pentagram
        edges.push((i, 5 + i)); // spokes
    }
    Graph::from_edges(10, &edges)
}

fn hamming(d: usize, q: usize) -> Result<Graph> {
    if d < 1 || q < 2 {
        return Err(Error::NamedGraph(format!(
            "hamming requires d >= 1 and q >= 2, got ({d},{q})"
        )));
    }
    let n = q.checked_pow(d as u32).filter(|&n| n <= super::graph6::MAX_VERTICES);
    let n = n.ok_or_else(|| Error::NamedGraph("hamming graph too large".into()))?;
    let digits = |mut x: usize| -> Vec<usize> {
        (0..d)
            .map(|_| {
                let r = x % q;
                x /= q;
                r
            })
            .collect()
    };
    let mut edges = Vec::new();
    for u in 0..n {
        let du = digits(u);
        for v in (u + 1)..n {
            let dv = digits(v);
            let dist = du.iter().zip(&dv).filter(|(a, b)| a != b).count();
            if dist == 1 {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

fn paley(q: usize) -> Result<Graph> {
    if q % 4 != 1 {
        return Err(Error::NamedGraph(format!(
            "paley requires q = 1 mod 4, got {q}"
        )));
    }
    let (p, e) = prime_power(q)
        .ok_or_else(|| Error::NamedGraph(format!("paley requires a prime power, got {q}")))?;
    let field = FiniteField::new(p, e);
    let squares: std::collections::HashSet<usize> =
        (1..q).map(|x| field.mul(x, x)).collect();
    let mut edges = Vec::new();
    for u in 0..q {
        for v in (u + 1)..q {
            if squares.contains(&field.sub(u, v)) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(q, &edges)
}

fn prime_power(q: usize) -> Option<(usize, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut x = q;
            let mut e = 0;
            while x % p == 0 {
                x /= p;
                e += 1;
            }
            return (x == 1).then_some((p, e));
        }
        p += 1;
    }
    Some((q, 1)) // q itself prime
}

/// GF(p^e) with elements indexed by sum(c_j * p^j) over the polynomial
/// representative c_0 + c_1 t + ... + c_{e-1} t^{e-1}.
struct FiniteField {
    p: usize,
    e: usize,
    /// Monic irreducible modulus, coefficients c_0..c_e.
    modulus: Vec<usize>,
}

impl FiniteField {
    fn new(p: usize, e: u32) -> FiniteField {
        let e = e as usize;
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            find_irreducible(p, e)
        };
        FiniteField { p, e, modulus }
    }

    fn to_poly(&self, x: usize) -> Vec<usize> {
        let mut x = x;
        (0..self.e)
            .map(|_| {
                let r = x % self.p;
                x /= self.p;
                r
            })
            .collect()
    }

    fn from_poly(&self, c: &[usize]) -> usize {
        c.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn sub(&self, a: usize, b: usize) -> usize {
        let (pa, pb) = (self.to_poly(a), self.to_poly(b));
        let c: Vec<usize> = pa
            .iter()
            .zip(&pb)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect();
        self.from_poly(&c)
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let (pa, pb) = (self.to_poly(a), self.to_poly(b));
        let mut prod = vec![0usize; 2 * self.e];
        for (i, &x) in pa.iter().enumerate() {
            for (j, &y) in pb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // reduce modulo the monic modulus of degree e
        for i in (self.e..2 * self.e).rev() {
            let coef = prod[i];
            if coef != 0 {
                prod[i] = 0;
                for j in 0..self.e {
                    let sub = coef * self.modulus[j] % self.p;
                    prod[i - self.e + j] = (prod[i - self.e + j] + self.p * self.p - sub) % self.p;
                }
            }
        }
        self.from_poly(&prod[..self.e])
    }
}

/// Finds a monic irreducible polynomial of degree e over F_p by exhaustive
/// trial division, choosing the lexicographically smallest coefficient vector.
fn find_irreducible(p: usize, e: usize) -> Vec<usize> {
    let count = p.pow(e as u32);
    'cand: for idx in 0..count {
        let mut c: Vec<usize> = {
            let mut x = idx;
            (0..e)
                .map(|_| {
                    let r = x % p;
                    x /= p;
                    r
                })
                .collect()
        };
        c.push(1); // monic degree e
        // trial division by all monic polynomials of degree 1..=e/2
        for deg in 1..=e / 2 {
            let dcount = p.pow(deg as u32);
            for didx in 0..dcount {
                let mut d: Vec<usize> = {
                    let mut x = didx;
                    (0..deg)
                        .map(|_| {
                            let r = x % p;
                            x /= p;
                            r
                        })
                        .collect()
                };
                d.push(1);
                if poly_divides(p, &d, &c) {
                    continue 'cand;
                }
            }
        }
        return c;
    }
    unreachable!("irreducible polynomial of every degree exists over F_p")
}

/// True if monic d divides c over F_p (exact polynomial remainder is zero).
fn poly_divides(p: usize, d: &[usize], c: &[usize]) -> bool {
    let mut rem = c.to_vec();
    let dd = d.len() - 1;
    while rem.len() > dd {
        let lead = *rem.last().unwrap();
        if lead != 0 {
            let shift = rem.len() - 1 - dd;
            for j in 0..=dd {
                rem[shift + j] = (rem[shift + j] + p * p - lead * d[j] % p) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&x| x == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paley9_shape() {
        let g = named_graph("paley(9)").unwrap();
        assert_eq!(g.n(), 9);
        assert_eq!(g.regularity(), Some(4));
        assert_eq!(g.edge_count(), 18);
    }

    #[test]
    fn paley13_shape() {
        let g = named_graph("paley(13)").unwrap();
        assert_eq!(g.n(), 13);
        assert_eq!(g.regularity(), Some(6));
    }

    #[test]
    fn paley_rejects_bad_parameters() {
        assert!(named_graph("paley(7)").is_err()); // 7 = 3 mod 4
        assert!(named_graph("paley(21)").is_err()); // not a prime power
    }

    #[test]
    fn cycle_and_complete() {
        let c5 = named_graph("cycle(5)").unwrap();
        assert_eq!(c5.n(), 5);
        assert_eq!(c5.regularity(), Some(2));
        assert!(named_graph("cycle(2)").is_err());
        assert_eq!(named_graph("complete(6)").unwrap().edge_count(), 15);
    }

    #[test]
    fn petersen_shape() {
        let p = named_graph("petersen").unwrap();
        assert_eq!(p.n(), 10);
        assert_eq!(p.regularity(), Some(3));
        assert_eq!(p.edge_count(), 15);
        assert_eq!(p.diameter().unwrap(), 2);
    }

    #[test]
    fn hamming_and_hypercube() {
        let h = named_graph("hamming(2,3)").unwrap();
        assert_eq!(h.n(), 9);
        assert_eq!(h.regularity(), Some(4));
        let q3 = named_graph("hypercube(3)").unwrap();
        assert_eq!(q3.n(), 8);
        assert_eq!(q3.regularity(), Some(3));
        assert_eq!(q3.diameter().unwrap(), 3);
    }

    #[test]
    fn spec_parsing_errors() {
        assert!(named_graph("nosuch").is_err());
        assert!(named_graph("cycle(").is_err());
        assert!(named_graph("cycle(3)x").is_err());
        assert!(named_graph("cycle(a)").is_err());
        assert!(named_graph("petersen(3)").is_err());
    }
}
