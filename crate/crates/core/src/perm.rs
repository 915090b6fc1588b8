//! Dense permutations on 0..n, used for map isomorphism witnesses and the
//! face/vertex permutation pair of a spherical map.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n as u32).collect(),
        }
    }

    /// Builds from an image table; `images` must be a bijection on 0..len.
    pub fn from_images(images: Vec<u32>) -> Self {
        debug_assert!(Self::is_bijection(&images));
        Perm { images }
    }

    fn is_bijection(images: &[u32]) -> bool {
        let mut seen = vec![false; images.len()];
        images.iter().all(|&i| {
            let ok = (i as usize) < images.len() && !seen[i as usize];
            if ok {
                seen[i as usize] = true;
            }
            ok
        })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Perm { images: inv }
    }

    /// Right-to-left composition: `(self * other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len());
        Perm {
            images: other.images.iter().map(|&x| self.apply(x)).collect(),
        }
    }

    /// `self . p . self^-1`.
    pub fn conjugate(&self, p: &Perm) -> Perm {
        self.compose(p).compose(&self.inverse())
    }

    pub fn is_involution(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(x, &y)| self.images[y as usize] == x as u32)
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() as u32 {
            if seen[start as usize] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start as usize] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x as usize] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            out.push(cyc);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// Parses disjoint cycles in 1-based notation, e.g. `(1,6,5)(7,12)`.
    /// `n` is the total number of points.
    pub fn from_cycles_one_based(text: &str, n: usize) -> Option<Perm> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut rest = text.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return None;
            }
            let close = rest.find(')')?;
            let body = &rest[1..close];
            let entries: Vec<u32> = body
                .split(',')
                .map(|s| s.trim().parse::<u32>().ok())
                .collect::<Option<Vec<_>>>()?;
            if entries.iter().any(|&e| e == 0 || e as usize > n) {
                return None;
            }
            for w in 0..entries.len() {
                let from = entries[w] - 1;
                let to = entries[(w + 1) % entries.len()] - 1;
                images[from as usize] = to;
            }
            rest = rest[close + 1..].trim_start();
        }
        if Self::is_bijection(&images) {
            Some(Perm { images })
        } else {
            None
        }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Perm {
    /// 1-based disjoint cycle notation, fixed points omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for cyc in self.cycles() {
            if cyc.len() < 2 {
                continue;
            }
            wrote = true;
            write!(f, "(")?;
            for (i, x) in cyc.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_inverse() {
        let p = Perm::from_images(vec![1, 2, 0, 3]);
        let q = p.inverse();
        assert_eq!(p.compose(&q), Perm::identity(4));
        assert_eq!(q.compose(&p), Perm::identity(4));
    }

    #[test]
    fn parse_cycles() {
        let s = Perm::from_cycles_one_based("(1,6,5,4,3,2)(7,12,11,10,9,8)", 12).unwrap();
        assert_eq!(s.apply(0), 5);
        assert_eq!(s.apply(5), 4);
        assert_eq!(s.apply(6), 11);
        assert_eq!(s.to_string(), "(1,6,5,4,3,2)(7,12,11,10,9,8)");
    }

    #[test]
    fn involution_check() {
        let p = Perm::from_images(vec![1, 0, 3, 2]);
        assert!(p.is_involution());
        let q = Perm::from_images(vec![1, 2, 0]);
        assert!(!q.is_involution());
    }
}
