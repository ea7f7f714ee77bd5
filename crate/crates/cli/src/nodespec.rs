use newton_holo::expr::{parse_complex, parse_complex_list};
use newton_holo::{ComplexValue, NodeSequence};

use crate::error::CliError;

/// A node-sequence flag before its default limit is known.
#[derive(Clone, Debug, PartialEq)]
pub enum NodeSpec {
    Const(ComplexValue),
    Geom {
        limit: ComplexValue,
        offset: ComplexValue,
        ratio: ComplexValue,
    },
    /// Explicit prefix; the constant tail sits at the center of the circle
    /// the nodes belong to.
    List(Vec<ComplexValue>),
}

impl NodeSpec {
    pub fn parse(text: &str) -> Result<NodeSpec, CliError> {
        let bad = |why: &str| CliError::Usage(format!("node spec {text:?}: {why}"));
        let (kind, body) = text
            .split_once(':')
            .ok_or_else(|| bad("expected const:, geom: or list:"))?;
        match kind {
            "const" => Ok(NodeSpec::Const(parse_complex(body)?)),
            "geom" => {
                let parts: Vec<&str> = body.split(',').collect();
                if parts.len() != 3 {
                    return Err(bad("geom takes <limit>,<offset>,<ratio>"));
                }
                Ok(NodeSpec::Geom {
                    limit: parse_complex(parts[0])?,
                    offset: parse_complex(parts[1])?,
                    ratio: parse_complex(parts[2])?,
                })
            }
            "list" => {
                let prefix = parse_complex_list(body)?;
                if prefix.is_empty() {
                    return Err(bad("list needs at least one node"));
                }
                Ok(NodeSpec::List(prefix))
            }
            _ => Err(bad("expected const:, geom: or list:")),
        }
    }

    pub fn resolve(&self, tail_limit: ComplexValue) -> Result<NodeSequence, CliError> {
        let seq = match self {
            NodeSpec::Const(c) => NodeSequence::constant(*c),
            NodeSpec::Geom { limit, offset, ratio } => NodeSequence::geometric(*limit, *offset, *ratio),
            NodeSpec::List(prefix) => NodeSequence::list(prefix.clone(), tail_limit),
        };
        Ok(seq?)
    }
}
