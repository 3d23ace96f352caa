use super::chain::{ChainState, Marker, SpinState};
use super::pulse::{apply_pulse, table_pulses, PulseSpec};
use crate::error::{invalid, Error, Result};
use std::collections::{HashMap, VecDeque};

const MAX_DEPTH: usize = 8;
const MAX_VISITED: usize = 1 << 16;

/// Four-site window (A, B, A, B) for a logical bit: "0" = ⇓⇑↑↓, "1" = ↑↓⇓⇑.
pub fn logical_pattern(bit: u8) -> [SpinState; 4] {
    use SpinState::{Excited as E, Ground as G};
    if bit == 0 {
        [E, E, G, G]
    } else {
        [G, G, E, E]
    }
}

/// The bit a window encodes, if it is a codeword.
pub fn logical_value(window: [SpinState; 4]) -> Option<u8> {
    (0..2).find(|&b| logical_pattern(b) == window)
}

/// Number of single-spin flips separating two windows.
pub fn code_distance(a: [SpinState; 4], b: [SpinState; 4]) -> usize {
    a.iter().zip(&b).filter(|(x, y)| x != y).count()
}

/// All sixteen assignments of a four-site window.
pub fn window_patterns() -> impl Iterator<Item = [SpinState; 4]> {
    (0..16u8).map(|k| {
        std::array::from_fn(|i| if k >> (3 - i) & 1 == 1 { SpinState::Excited } else { SpinState::Ground })
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Encoding {
    pub state: ChainState,
    pub program: Vec<PulseSpec>,
}

/// Shortest program of Table pulses that writes `bit` into the ground window
/// at `position` and leaves every other site unchanged.
pub fn encode_logical(chain: &ChainState, position: usize, bit: u8) -> Result<Encoding> {
    if bit > 1 {
        return Err(invalid("bit", format!("{bit} is not 0 or 1")));
    }
    if !position.is_multiple_of(2) || position + 4 > chain.len() {
        return Err(invalid("position", format!("no A-aligned four-site window at {position}")));
    }
    let window = position..position + 4;
    if window.clone().any(|i| chain.spin(i) != SpinState::Ground) {
        return Err(invalid("position", "window is not in the ground state"));
    }
    if window.clone().any(|i| chain.site(i).marker == Marker::DopantPort || chain.is_port_neighbor(i)) {
        return Err(invalid("position", "window overlaps a port"));
    }
    let mut target = chain.clone();
    for (k, s) in logical_pattern(bit).into_iter().enumerate() {
        target.set_spin(position + k, s);
    }

    let pulses = table_pulses();
    let mut parent: HashMap<ChainState, Option<(ChainState, PulseSpec)>> = HashMap::new();
    parent.insert(chain.clone(), None);
    let mut queue = VecDeque::from([(chain.clone(), 0usize)]);
    while let Some((state, depth)) = queue.pop_front() {
        if state == target {
            let mut program = Vec::new();
            let mut cur = state.clone();
            while let Some(Some((prev, p))) = parent.get(&cur) {
                program.push(*p);
                cur = prev.clone();
            }
            program.reverse();
            return Ok(Encoding { state, program });
        }
        if depth == MAX_DEPTH || parent.len() >= MAX_VISITED {
            continue;
        }
        for p in &pulses {
            let next = apply_pulse(&state, p)?;
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((state.clone(), *p)));
                queue.push_back((next, depth + 1));
            }
        }
    }
    Err(Error::EncodingBlocked {
        position,
        reason: format!("no selective program of at most {MAX_DEPTH} Table pulses reaches the target"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::PulseTarget;

    #[test]
    fn zero_at_boundary_uses_two_pulses() {
        let chain = ChainState::ground(8).unwrap();
        let enc = encode_logical(&chain, 0, 0).unwrap();
        assert_eq!(enc.state.to_arrows(), "VW^v^v^v");
        assert_eq!(
            enc.program,
            vec![PulseSpec::pi(PulseTarget::A, -1).unwrap(), PulseSpec::pi(PulseTarget::B, 0).unwrap()]
        );
    }

    #[test]
    fn distance_between_codewords() {
        assert_eq!(code_distance(logical_pattern(0), logical_pattern(1)), 4);
        assert_eq!(code_distance(logical_pattern(1), logical_pattern(1)), 0);
    }

    #[test]
    fn rejects_misaligned_window() {
        let chain = ChainState::ground(8).unwrap();
        assert!(encode_logical(&chain, 1, 0).is_err());
        assert!(encode_logical(&chain, 6, 0).is_err());
        assert!(encode_logical(&chain, 0, 2).is_err());
    }
}
