//! `--budget` specs such as `edges=14,colors=10,time=30s,nodes=1000000`.

use std::time::{Duration, Instant};

use arborize_core::fractional::DEFAULT_EDGE_CAP;
use arborize_core::oracle::OracleBudget;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    /// Oracle: largest total number of edge copies.
    pub edges: usize,
    /// Oracle: largest k tried.
    pub colors: usize,
    /// Oracle: DFS node limit.
    pub nodes: Option<u64>,
    pub time: Option<Duration>,
    /// Fractional LP: largest number of distinct edges.
    pub forest_cap: usize,
}

impl Default for Budget {
    fn default() -> Self {
        let oracle = OracleBudget::default();
        Budget { edges: oracle.max_edges, colors: oracle.max_colors, nodes: None, time: None, forest_cap: DEFAULT_EDGE_CAP }
    }
}

impl Budget {
    pub fn parse(spec: &str) -> Result<Budget, CliError> {
        let mut b = Budget::default();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| CliError::usage(format!("budget item {item:?} is not key=value")))?;
            let number = |v: &str| {
                v.parse::<u64>().map_err(|_| CliError::usage(format!("budget {key}: {v:?} is not a number")))
            };
            match key {
                "edges" => b.edges = number(value)? as usize,
                "colors" => b.colors = number(value)? as usize,
                "nodes" => b.nodes = Some(number(value)?),
                "forest-cap" => b.forest_cap = number(value)? as usize,
                "time" => b.time = Some(parse_duration(value)?),
                _ => {
                    return Err(CliError::usage(format!(
                        "unknown budget key {key:?}; expected edges, colors, nodes, time or forest-cap"
                    )))
                }
            }
        }
        Ok(b)
    }

    pub fn oracle(&self) -> OracleBudget {
        OracleBudget { max_edges: self.edges, max_colors: self.colors, max_nodes: self.nodes }
    }

    /// A poll closure that turns true once the time budget is spent.
    pub fn deadline(&self) -> impl FnMut() -> bool {
        let end = self.time.map(|t| Instant::now() + t);
        move || end.is_some_and(|e| Instant::now() >= e)
    }
}

fn parse_duration(v: &str) -> Result<Duration, CliError> {
    let bad = || CliError::usage(format!("budget time {v:?}: expected e.g. 500ms, 30s or 5m"));
    let (digits, unit) = v.find(|c: char| !c.is_ascii_digit()).map_or((v, "s"), |i| v.split_at(i));
    let n: u64 = digits.parse().map_err(|_| bad())?;
    match unit {
        "ms" => Ok(Duration::from_millis(n)),
        "s" => Ok(Duration::from_secs(n)),
        "m" => Ok(Duration::from_secs(60 * n)),
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_items() {
        let b = Budget::parse("edges=10, time=2m,nodes=5").unwrap();
        assert_eq!((b.edges, b.time, b.nodes), (10, Some(Duration::from_secs(120)), Some(5)));
        assert_eq!(Budget::parse("").unwrap(), Budget::default());
        assert_eq!(Budget::parse("time=250ms").unwrap().time, Some(Duration::from_millis(250)));
        assert_eq!(Budget::parse("time=7").unwrap().time, Some(Duration::from_secs(7)));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["edges", "edges=x", "speed=3", "time=3h"] {
            assert!(Budget::parse(bad).is_err(), "{bad}");
        }
    }
}
