//! Code-connectivity analysis.
//!
//! For every kind of boundary entity (vertices, and in 3D also the cube
//! edges of each direction and the faces) a graph is built whose nodes are
//! codes on a particular part of a face and whose arcs are the entity
//! instances of the tiles. In 2D the nodes of the vertex graph are the
//! half-edge codes (west/east codes split into bottom/top halves, south/north
//! codes split into left/right halves) and every tile corner is an arc
//! joining one vertical and one horizontal node. In 3D a vertex joins three
//! face-corner nodes, and a cube edge joins two nodes while the codes on the
//! faces perpendicular to it are neglected. A node whose code occurs on
//! only one of the two opposite faces links nothing.
//!
//! The connected components, found by depth-first search, are the entity
//! classes: a particle overlapping an entity must be copied to every member
//! of that entity's class.

use std::collections::HashMap;

use super::entity::{Entity, Side, ENTITY_SLOTS};
use super::TileSet;

const NO_CLASS: u32 = u32::MAX;

/// One connected component: all entity instances sharing a (derived) code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntityClass {
    fixed_mask: u8,
    members: Vec<(usize, Entity)>,
}

impl EntityClass {
    /// Fixed-axis mask shared by all members.
    pub fn fixed_mask(&self) -> u8 {
        self.fixed_mask
    }

    /// Members as `(tile index, entity)`, sorted.
    pub fn members(&self) -> &[(usize, Entity)] {
        &self.members
    }
}

#[derive(Clone, Debug)]
pub struct ConnectivityAnalysis {
    dim: usize,
    classes: Vec<EntityClass>,
    class_of: Vec<[u32; ENTITY_SLOTS]>,
}

impl ConnectivityAnalysis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn classes(&self) -> &[EntityClass] {
        &self.classes
    }

    pub fn class(&self, id: usize) -> &EntityClass {
        &self.classes[id]
    }

    /// Class id of `entity` on `tile`.
    pub fn class_of(&self, tile: usize, entity: Entity) -> usize {
        let id = self.class_of[tile][entity.slot()];
        debug_assert_ne!(id, NO_CLASS, "entity {entity:?} not analysed");
        id as usize
    }

    fn classes_with_codim(&self, codim: u32) -> Vec<&EntityClass> {
        self.classes
            .iter()
            .filter(|c| c.fixed_mask.count_ones() == codim)
            .collect()
    }

    /// Vertex classes (the derived vertex codes).
    pub fn vertex_classes(&self) -> Vec<&EntityClass> {
        self.classes_with_codim(self.dim as u32)
    }

    /// Classes of cube edges; empty in 2D.
    pub fn edge_classes(&self) -> Vec<&EntityClass> {
        if self.dim == 3 {
            self.classes_with_codim(2)
        } else {
            Vec::new()
        }
    }

    /// Cube-edge classes for edges parallel to `axis` (3D only).
    pub fn edge_classes_along(&self, axis: usize) -> Vec<&EntityClass> {
        let full = (1u8 << self.dim) - 1;
        let mask = full & !(1 << axis);
        self.classes
            .iter()
            .filter(|c| self.dim == 3 && c.fixed_mask == mask)
            .collect()
    }

    /// Face (2D: edge) classes; one per code and orientation axis.
    pub fn face_classes(&self) -> Vec<&EntityClass> {
        self.classes_with_codim(1)
    }
}

/// Graph node: face axis, code on that face, and the sides of the other
/// fixed axes selecting the part of the face (half-edge / face corner).
type Node = (u8, u32, u8);

/// Finds all entity classes of `set` as connected components of the
/// bipartite code multigraphs.
pub fn analyze_codes(set: &TileSet) -> ConnectivityAnalysis {
    let dim = set.dim();
    let full = (1u8 << dim) - 1;
    let mut classes = Vec::new();
    let mut class_of = vec![[NO_CLASS; ENTITY_SLOTS]; set.len()];

    for fixed in 1..=full {
        let sides_list: Vec<u8> = (0..=full).filter(|s| s & !fixed == 0).collect();
        let mut instances: Vec<(usize, Entity)> = Vec::new();
        for t in 0..set.len() {
            for &s in &sides_list {
                instances.push((t, Entity::new(fixed, s)));
            }
        }

        let nodes_of = |&(t, e): &(usize, Entity)| -> Vec<Node> {
            let nodes: Vec<Node> = (0..dim)
                .filter_map(|a| {
                    let side = e.side(a)?;
                    let rest = e.sides_mask() & fixed & !(1 << a);
                    Some((a as u8, set.code(t, a, side), rest))
                })
                .collect();
            // an arc never joins two nodes of the same orientation
            debug_assert!(nodes
                .iter()
                .enumerate()
                .all(|(i, n)| nodes[i + 1..].iter().all(|m| m.0 != n.0)));
            nodes
        };

        let mut by_node: HashMap<Node, Vec<usize>> = HashMap::new();
        let inst_nodes: Vec<Vec<Node>> = instances.iter().map(nodes_of).collect();
        for (i, nodes) in inst_nodes.iter().enumerate() {
            for n in nodes {
                by_node.entry(*n).or_default().push(i);
            }
        }
        // a code carried on one side only never abuts anything, so it
        // links nothing
        by_node.retain(|&(a, _, _), members| {
            let high = |&i: &usize| instances[i].1.side(a as usize) == Some(Side::High);
            members.iter().any(high) && !members.iter().all(high)
        });

        let mut visited = vec![false; instances.len()];
        let mut stack = Vec::new();
        for start in 0..instances.len() {
            if visited[start] {
                continue;
            }
            let id = classes.len() as u32;
            let mut members = Vec::new();
            visited[start] = true;
            stack.push(start);
            while let Some(i) = stack.pop() {
                members.push(instances[i]);
                for n in &inst_nodes[i] {
                    for &j in by_node.get(n).into_iter().flatten() {
                        if !visited[j] {
                            visited[j] = true;
                            stack.push(j);
                        }
                    }
                }
            }
            members.sort();
            for &(t, e) in &members {
                class_of[t][e.slot()] = id;
            }
            classes.push(EntityClass {
                fixed_mask: fixed,
                members,
            });
        }
    }

    ConnectivityAnalysis {
        dim,
        classes,
        class_of,
    }
}
