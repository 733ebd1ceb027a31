//! Content digests for memo keys and report identity.

use sha2::{Digest, Sha256};

/// Incremental SHA-256 over a canonical byte stream.
pub struct Hasher(Sha256);

impl Hasher {
    pub fn new(tag: &str) -> Hasher {
        let mut h = Sha256::new();
        h.update(tag.as_bytes());
        h.update([0u8]);
        Hasher(h)
    }

    pub fn u64(&mut self, v: u64) {
        self.0.update(v.to_le_bytes());
    }

    pub fn str(&mut self, s: &str) {
        self.u64(s.len() as u64);
        self.0.update(s.as_bytes());
    }

    pub fn scalar(&mut self, s: &crate::field::Scalar) {
        self.str(&s.render());
    }

    pub fn mat(&mut self, m: &crate::mat::Mat) {
        self.u64(m.rows() as u64);
        self.u64(m.cols() as u64);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                self.scalar(&m.get(i, j));
            }
        }
    }

    pub fn finish(self) -> String {
        let out = self.0.finalize();
        out.iter().take(12).map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_and_tag_sensitive() {
        let mut a = Hasher::new("x");
        a.u64(7);
        let mut b = Hasher::new("x");
        b.u64(7);
        assert_eq!(a.finish(), b.finish());
        let mut c = Hasher::new("y");
        c.u64(7);
        let mut d = Hasher::new("x");
        d.u64(7);
        assert_ne!(c.finish(), d.finish());
    }
}
