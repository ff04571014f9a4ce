//! Open-game JSON.
//!
//! Position ids in a file are arbitrary distinct integers; they are mapped
//! to indices in the order the positions are listed.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{Boundary, Endpoint, OpenParityGame, Player, Position};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DomainRepr {
    #[serde(rename = "in")]
    entries: usize,
    #[serde(rename = "out")]
    exits: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CodomainRepr {
    #[serde(rename = "out")]
    exits: usize,
    #[serde(rename = "in")]
    entries: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PositionRepr {
    id: u64,
    owner: u8,
    priority: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

#[derive(Serialize, Deserialize, Clone, Copy)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
enum EndpointRepr {
    Pos(u64),
    Entry(usize),
    Exit(usize),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GameRepr {
    max_priority: u32,
    domain: DomainRepr,
    codomain: CodomainRepr,
    positions: Vec<PositionRepr>,
    edges: Vec<[EndpointRepr; 2]>,
}

pub fn game_to_json(game: &OpenParityGame) -> String {
    let ep = |e: Endpoint| match e {
        Endpoint::Pos(p) => EndpointRepr::Pos(p as u64),
        Endpoint::Entry(i) => EndpointRepr::Entry(i),
        Endpoint::Exit(k) => EndpointRepr::Exit(k),
    };
    let repr = GameRepr {
        max_priority: game.max_priority(),
        domain: DomainRepr {
            entries: game.domain().rightward,
            exits: game.domain().leftward,
        },
        codomain: CodomainRepr {
            exits: game.codomain().rightward,
            entries: game.codomain().leftward,
        },
        positions: game
            .positions()
            .iter()
            .enumerate()
            .map(|(id, p)| PositionRepr {
                id: id as u64,
                owner: p.owner.index(),
                priority: p.priority.value(),
                name: p.name.clone(),
            })
            .collect(),
        edges: game.edges().iter().map(|&(s, t)| [ep(s), ep(t)]).collect(),
    };
    serde_json::to_string_pretty(&repr).expect("game JSON always serialises")
}

/// Parse and validate an open game.
pub fn game_from_json(text: &str) -> Result<OpenParityGame> {
    let repr: GameRepr = serde_json::from_str(text)?;
    let mut index = HashMap::new();
    let mut positions = Vec::with_capacity(repr.positions.len());
    for p in &repr.positions {
        if index.insert(p.id, positions.len()).is_some() {
            return Err(Error::Precondition(format!("position id {} is declared twice", p.id)));
        }
        let owner = Player::from_index(p.owner.into())
            .ok_or_else(|| Error::Precondition(format!("position {} has owner {}, expected 0 or 1", p.id, p.owner)))?;
        let mut pos = Position::new(owner, p.priority);
        pos.name = p.name.clone();
        positions.push(pos);
    }
    let ep = |e: EndpointRepr| -> Result<Endpoint> {
        Ok(match e {
            EndpointRepr::Pos(id) => Endpoint::Pos(
                *index
                    .get(&id)
                    .ok_or_else(|| Error::Precondition(format!("edge names undeclared position {id}")))?,
            ),
            EndpointRepr::Entry(i) => Endpoint::Entry(i),
            EndpointRepr::Exit(k) => Endpoint::Exit(k),
        })
    };
    let edges = repr
        .edges
        .iter()
        .map(|&[s, t]| Ok((ep(s)?, ep(t)?)))
        .collect::<Result<Vec<_>>>()?;
    OpenParityGame::new(
        repr.max_priority,
        Boundary::new(repr.domain.entries, repr.domain.exits),
        Boundary::new(repr.codomain.exits, repr.codomain.entries),
        positions,
        edges,
    )
}
