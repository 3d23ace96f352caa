use super::chain::{ChainState, Marker, SpinState};
use super::pulse::{apply_pulse, PulseSpec, PulseTarget};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PortOp {
    Write(SpinState),
    /// Moves the dopant's state onto its port neighbour.
    SwapIn,
    /// Moves the port neighbour's state onto the dopant.
    SwapOut,
    Read,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PortOutcome {
    pub state: ChainState,
    pub program: Vec<PulseSpec>,
    /// Dopant spin, for reads.
    pub read: Option<SpinState>,
}

/// Doubled neighbour sum of `site` if `control` were excited.
fn conditional_sum2(chain: &ChainState, site: usize, control: usize) -> i8 {
    let mut probe = chain.clone();
    probe.set_spin(control, SpinState::Excited);
    probe.neighbor_sum2(site)
}

/// Three conditional flips N|D, D|N, N|D. Each pulse sits at the target's
/// frequency for an excited control, so it acts only when the control is
/// excited.
fn swap_program(chain: &ChainState, dopant: usize, neighbor: usize) -> Result<Vec<PulseSpec>> {
    let n_given_d = PulseSpec::pi(PulseTarget::PortNeighbor, conditional_sum2(chain, neighbor, dopant))?;
    let d_given_n = PulseSpec::pi(PulseTarget::Dopant, conditional_sum2(chain, dopant, neighbor))?;
    Ok(vec![n_given_d, d_given_n, n_given_d])
}

/// Input and output through a dopant port.
pub fn port_io(chain: &ChainState, dopant: usize, op: PortOp) -> Result<PortOutcome> {
    if dopant >= chain.len() || chain.site(dopant).marker != Marker::DopantPort {
        return Err(Error::InvalidPort { index: dopant, reason: "site is not a dopant port".into() });
    }
    let neighbor = chain.port_neighbor(dopant).expect("dopant has a neighbour");
    let program = match op {
        PortOp::Read => {
            return Ok(PortOutcome { state: chain.clone(), program: Vec::new(), read: Some(chain.spin(dopant)) })
        }
        PortOp::Write(s) if s == chain.spin(dopant) => Vec::new(),
        PortOp::Write(_) => vec![PulseSpec::pi(PulseTarget::Dopant, chain.neighbor_sum2(dopant))?],
        PortOp::SwapIn | PortOp::SwapOut => swap_program(chain, dopant, neighbor)?,
    };
    let state = program.iter().try_fold(chain.clone(), |c, p| apply_pulse(&c, p))?;
    Ok(PortOutcome { state, program, read: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn write_then_swap_moves_excitation() {
        let chain = ChainState::ground(6).unwrap().with_dopant(2).unwrap();
        let written = port_io(&chain, 2, PortOp::Write(SpinState::Excited)).unwrap().state;
        assert_eq!(written.spin(2), SpinState::Excited);
        let swapped = port_io(&written, 2, PortOp::SwapIn).unwrap();
        assert_eq!(swapped.program.len(), 3);
        assert_eq!(swapped.state.spin(2), SpinState::Ground);
        assert_eq!(swapped.state.spin(3), SpinState::Excited);
        let back = port_io(&swapped.state, 2, PortOp::SwapOut).unwrap().state;
        assert_eq!(back, written);
    }

    #[test]
    fn read_is_passive() {
        let chain = ChainState::ground(4).unwrap().with_dopant(0).unwrap();
        let out = port_io(&chain, 0, PortOp::Read).unwrap();
        assert_eq!(out.read, Some(SpinState::Ground));
        assert_eq!(out.state, chain);
        assert!(matches!(port_io(&chain, 1, PortOp::Read), Err(Error::InvalidPort { .. })));
    }
}
