use crate::error::{invalid, Error, Result};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sublattice {
    A,
    B,
}

impl Sublattice {
    pub fn of_index(i: usize) -> Self {
        if i.is_multiple_of(2) {
            Self::A
        } else {
            Self::B
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpinState {
    Ground,
    Excited,
}

impl SpinState {
    pub fn flipped(self) -> Self {
        match self {
            Self::Ground => Self::Excited,
            Self::Excited => Self::Ground,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Marker {
    None,
    DopantPort,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Site {
    pub sublattice: Sublattice,
    pub spin: SpinState,
    pub marker: Marker,
}

impl Site {
    /// Doubled magnetic quantum number.
    pub fn m2(&self) -> i8 {
        match (self.sublattice, self.spin) {
            (Sublattice::A, SpinState::Ground) | (Sublattice::B, SpinState::Excited) => 1,
            _ => -1,
        }
    }
}

/// Classical configuration of the chain.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainState {
    sites: Vec<Site>,
}

impl ChainState {
    /// Néel ground state ↑↓↑↓….
    pub fn ground(len: usize) -> Result<Self> {
        if len < 2 {
            return Err(invalid("len", "chain needs at least two sites"));
        }
        let sites = (0..len)
            .map(|i| Site { sublattice: Sublattice::of_index(i), spin: SpinState::Ground, marker: Marker::None })
            .collect();
        Ok(Self { sites })
    }

    /// Marks `index` as a dopant port.
    pub fn with_dopant(mut self, index: usize) -> Result<Self> {
        if index >= self.len() {
            return Err(Error::InvalidPort { index, reason: "outside the chain".into() });
        }
        self.sites[index].marker = Marker::DopantPort;
        self.check_ports()?;
        Ok(self)
    }

    fn check_ports(&self) -> Result<()> {
        for d in self.dopants() {
            let n = self.port_neighbor(d).expect("dopant has a neighbour");
            if self.sites[n].marker == Marker::DopantPort {
                return Err(Error::InvalidPort { index: d, reason: "port neighbour is itself a dopant".into() });
            }
        }
        let mut seen: Vec<usize> = self.dopants().filter_map(|d| self.port_neighbor(d)).collect();
        let total = seen.len();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != total {
            return Err(invalid("dopants", "two dopants share a port neighbour"));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn site(&self, i: usize) -> Site {
        self.sites[i]
    }

    pub fn spin(&self, i: usize) -> SpinState {
        self.sites[i].spin
    }

    pub(crate) fn set_spin(&mut self, i: usize, spin: SpinState) {
        self.sites[i].spin = spin;
    }

    pub fn dopants(&self) -> impl Iterator<Item = usize> + '_ {
        self.sites.iter().enumerate().filter(|(_, s)| s.marker == Marker::DopantPort).map(|(i, _)| i)
    }

    /// Right neighbour of a dopant, or the left one at the chain end.
    pub fn port_neighbor(&self, dopant: usize) -> Option<usize> {
        if self.sites.get(dopant)?.marker != Marker::DopantPort {
            return None;
        }
        Some(if dopant + 1 < self.len() { dopant + 1 } else { dopant - 1 })
    }

    pub fn is_port_neighbor(&self, i: usize) -> bool {
        self.dopants().any(|d| self.port_neighbor(d) == Some(i))
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> {
        let len = self.len();
        [i.checked_sub(1), (i + 1 < len).then_some(i + 1)].into_iter().flatten()
    }

    /// Doubled neighbour sum 2(m_< + m_>); end sites count their single neighbour.
    pub fn neighbor_sum2(&self, i: usize) -> i8 {
        self.neighbors(i).map(|j| self.sites[j].m2()).sum()
    }

    pub fn excitations(&self) -> usize {
        self.sites.iter().filter(|s| s.spin == SpinState::Excited).count()
    }

    /// Parses `^` A-ground, `V` A-excited, `v` B-ground, `W` B-excited and
    /// `d`/`D` dopant ground/excited.
    pub fn from_arrows(s: &str) -> Result<Self> {
        let mut sites = Vec::new();
        for (i, c) in s.chars().enumerate() {
            let sub = Sublattice::of_index(i);
            let (expected, spin, marker) = match c {
                '^' => (Some(Sublattice::A), SpinState::Ground, Marker::None),
                'V' => (Some(Sublattice::A), SpinState::Excited, Marker::None),
                'v' => (Some(Sublattice::B), SpinState::Ground, Marker::None),
                'W' => (Some(Sublattice::B), SpinState::Excited, Marker::None),
                'd' => (None, SpinState::Ground, Marker::DopantPort),
                'D' => (None, SpinState::Excited, Marker::DopantPort),
                _ => return Err(Error::Parse(format!("unknown site symbol {c:?} at {i}"))),
            };
            if expected.is_some_and(|e| e != sub) {
                return Err(Error::Parse(format!("symbol {c:?} at {i} breaks A/B alternation")));
            }
            sites.push(Site { sublattice: sub, spin, marker });
        }
        if sites.len() < 2 {
            return Err(Error::Parse("chain needs at least two sites".into()));
        }
        let chain = Self { sites };
        chain.check_ports()?;
        Ok(chain)
    }

    pub fn to_arrows(&self) -> String {
        self.sites
            .iter()
            .map(|s| match (s.marker, s.sublattice, s.spin) {
                (Marker::DopantPort, _, SpinState::Ground) => 'd',
                (Marker::DopantPort, _, SpinState::Excited) => 'D',
                (_, Sublattice::A, SpinState::Ground) => '^',
                (_, Sublattice::A, SpinState::Excited) => 'V',
                (_, Sublattice::B, SpinState::Ground) => 'v',
                (_, Sublattice::B, SpinState::Excited) => 'W',
            })
            .collect()
    }
}

impl fmt::Display for ChainState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_arrows())
    }
}

/// Control-unit pattern ⇑⇓↓↑⇑⇓ starting on a B site.
const CONTROL_UNIT: [SpinState; 6] = [
    SpinState::Excited,
    SpinState::Excited,
    SpinState::Ground,
    SpinState::Ground,
    SpinState::Excited,
    SpinState::Excited,
];

/// Checks the control unit at `start` and that an odd number of spacer
/// sites separates it from each four-site logical window.
pub fn validate_control_unit(chain: &ChainState, start: usize, windows: &[usize]) -> Result<()> {
    if start.is_multiple_of(2) || start + 6 > chain.len() {
        return Err(invalid("control_unit", format!("cannot start at {start}")));
    }
    if (0..6).any(|k| chain.spin(start + k) != CONTROL_UNIT[k]) {
        return Err(invalid("control_unit", "pattern mismatch"));
    }
    for &w in windows {
        if w % 2 != 0 {
            return Err(invalid("window", format!("window at {w} does not start on an A site")));
        }
        let spacers = if w + 4 <= start {
            start - (w + 4)
        } else if w >= start + 6 {
            w - (start + 6)
        } else {
            return Err(invalid("window", format!("window at {w} overlaps the control unit")));
        };
        if spacers % 2 == 0 {
            return Err(invalid("window", format!("{spacers} spacer sites between window {w} and control unit")));
        }
    }
    Ok(())
}

/// True if every pair of nearest neighbours in the grid of `^`/`v` rows
/// points in opposite directions.
pub fn is_antiferromagnetic_2d(rows: &[&str]) -> Result<bool> {
    let grid: Vec<Vec<char>> = rows.iter().map(|r| r.chars().collect()).collect();
    let width = grid.first().map_or(0, Vec::len);
    if grid.iter().any(|r| r.len() != width || r.iter().any(|c| !matches!(c, '^' | 'v'))) {
        return Err(Error::Parse("rows must be equal-length strings of ^ and v".into()));
    }
    for (y, row) in grid.iter().enumerate() {
        for (x, &c) in row.iter().enumerate() {
            if (x + 1 < width && row[x + 1] == c) || (y + 1 < grid.len() && grid[y + 1][x] == c) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrows_round_trip() {
        for s in ["^v", "^vVW^v", "dvVW", "^v^D", "VWVW^v"] {
            assert_eq!(ChainState::from_arrows(s).unwrap().to_arrows(), s);
        }
        assert!(ChainState::from_arrows("v^").is_err());
        assert!(ChainState::from_arrows("^").is_err());
        assert!(ChainState::from_arrows("dd").is_err());
    }

    #[test]
    fn neighbour_sums_on_ground_chain() {
        let c = ChainState::ground(6).unwrap();
        assert_eq!(c.neighbor_sum2(0), -1);
        assert_eq!(c.neighbor_sum2(1), 2);
        assert_eq!(c.neighbor_sum2(2), -2);
        assert_eq!(c.neighbor_sum2(5), 1);
    }

    #[test]
    fn port_neighbour_falls_back_at_end() {
        let c = ChainState::ground(4).unwrap().with_dopant(3).unwrap();
        assert_eq!(c.port_neighbor(3), Some(2));
        assert_eq!(c.port_neighbor(1), None);
    }

    #[test]
    fn control_unit_spacing() {
        // Logical window at 0, one spacer at 4, control unit from 5.
        let c = ChainState::from_arrows("VW^v^WVv^WV").unwrap();
        assert!(validate_control_unit(&c, 5, &[0]).is_ok());
        assert!(validate_control_unit(&c, 5, &[2]).is_err());
        assert!(validate_control_unit(&c, 4, &[0]).is_err());
        let c = ChainState::from_arrows("VW^v^v^WVv^WV").unwrap();
        assert!(validate_control_unit(&c, 7, &[0]).is_ok());
    }

    #[test]
    fn chessboard() {
        assert!(is_antiferromagnetic_2d(&["^v^", "v^v"]).unwrap());
        assert!(!is_antiferromagnetic_2d(&["^v^", "^v^"]).unwrap());
        assert!(is_antiferromagnetic_2d(&["^v", "v"]).is_err());
    }
}
