//! Philox4x32-10, a counter-based generator: output is a pure function of
//! `(key, counter)`, so any sample can be regenerated without the ones
//! before it.

use rand::RngCore;

const M0: u32 = 0xD251_1F53;
const M1: u32 = 0xCD9E_8D57;
const W0: u32 = 0x9E37_79B9;
const W1: u32 = 0xBB67_AE85;

#[inline]
fn mulhilo(a: u32, b: u32) -> (u32, u32) {
    let p = u64::from(a) * u64::from(b);
    ((p >> 32) as u32, p as u32)
}

/// The Philox4x32 bijection with ten rounds.
pub fn philox4x32(ctr: [u32; 4], key: [u32; 2]) -> [u32; 4] {
    let mut c = ctr;
    let mut k = key;
    for round in 0..10 {
        if round > 0 {
            k[0] = k[0].wrapping_add(W0);
            k[1] = k[1].wrapping_add(W1);
        }
        let (hi0, lo0) = mulhilo(M0, c[0]);
        let (hi1, lo1) = mulhilo(M1, c[2]);
        c = [hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0];
    }
    c
}

/// The stream of sample `index` under `seed`: the key is the seed and the
/// upper half of the counter is the index, the lower half counts blocks of
/// four words within the stream.
#[derive(Clone, Debug)]
pub struct Philox {
    key: [u32; 2],
    counter: [u32; 4],
    buf: [u32; 4],
    used: usize,
}

impl Philox {
    pub fn new(seed: u64, index: u64) -> Self {
        Philox {
            key: [seed as u32, (seed >> 32) as u32],
            counter: [0, 0, index as u32, (index >> 32) as u32],
            buf: [0; 4],
            used: 4,
        }
    }

    fn refill(&mut self) {
        self.buf = philox4x32(self.counter, self.key);
        let (lo, carry) = self.counter[0].overflowing_add(1);
        self.counter[0] = lo;
        if carry {
            self.counter[1] = self.counter[1].wrapping_add(1);
        }
        self.used = 0;
    }
}

impl RngCore for Philox {
    fn next_u32(&mut self) -> u32 {
        if self.used == 4 {
            self.refill();
        }
        let v = self.buf[self.used];
        self.used += 1;
        v
    }

    fn next_u64(&mut self) -> u64 {
        let lo = u64::from(self.next_u32());
        let hi = u64::from(self.next_u32());
        hi << 32 | lo
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        for chunk in dst.chunks_mut(4) {
            let bytes = self.next_u32().to_le_bytes();
            chunk.copy_from_slice(&bytes[..chunk.len()]);
        }
    }
}
