//! Boundary entities of the unit tile (edges, vertices) and cube (faces,
//! edges, vertices), encoded as a set of fixed axes plus a side per axis.

/// Side of the tile along one axis: `Low` is west/south/bottom, `High` is
/// east/north/top.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Low = 0,
    High = 1,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Low => Side::High,
            Side::High => Side::Low,
        }
    }

    pub fn from_bit(bit: bool) -> Side {
        if bit {
            Side::High
        } else {
            Side::Low
        }
    }
}

/// Number of dense entity slots (3 axis bits for `fixed`, 3 for `sides`).
pub const ENTITY_SLOTS: usize = 64;

/// A boundary entity of the tile domain `[-0.5, 0.5]^d`.
///
/// Axis `a` is fixed when bit `a` of `fixed` is set; the entity then lies on
/// the low or high side of that axis according to bit `a` of `sides`. A
/// face has one fixed axis, a vertex has all axes fixed, and in 3D the cube
/// edges are the entities with two fixed axes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Entity {
    fixed: u8,
    sides: u8,
}

impl Entity {
    pub fn new(fixed: u8, sides: u8) -> Entity {
        debug_assert!(fixed != 0 && fixed < 8);
        Entity {
            fixed,
            sides: sides & fixed,
        }
    }

    pub fn face(axis: usize, side: Side) -> Entity {
        Entity::new(1 << axis, (side as u8) << axis)
    }

    /// The corner with the given side per axis (bit `a` set = high side).
    pub fn vertex(dim: usize, sides: u8) -> Entity {
        Entity::new(((1u16 << dim) - 1) as u8, sides)
    }

    pub fn fixed_mask(&self) -> u8 {
        self.fixed
    }

    pub fn sides_mask(&self) -> u8 {
        self.sides
    }

    pub fn is_fixed(&self, axis: usize) -> bool {
        self.fixed & (1 << axis) != 0
    }

    pub fn side(&self, axis: usize) -> Option<Side> {
        self.is_fixed(axis)
            .then(|| Side::from_bit(self.sides & (1 << axis) != 0))
    }

    /// Number of fixed axes.
    pub fn codim(&self) -> u32 {
        self.fixed.count_ones()
    }

    pub fn is_vertex(&self, dim: usize) -> bool {
        self.codim() as usize == dim
    }

    /// The same entity seen from the tile across it (all sides flipped).
    pub fn opposite(&self) -> Entity {
        Entity {
            fixed: self.fixed,
            sides: self.sides ^ self.fixed,
        }
    }

    /// Unit direction from the tile centre towards the entity.
    pub fn direction(&self) -> [i32; 3] {
        let mut d = [0; 3];
        for (axis, v) in d.iter_mut().enumerate() {
            if let Some(side) = self.side(axis) {
                *v = if side == Side::High { 1 } else { -1 };
            }
        }
        d
    }

    /// Translation (in tile widths) that carries a point near `self` to the
    /// same relative position near `other`; both must share the fixed axes.
    pub fn translation_to(&self, other: &Entity) -> [i32; 3] {
        debug_assert_eq!(self.fixed, other.fixed);
        let mut t = [0; 3];
        for (axis, v) in t.iter_mut().enumerate() {
            if let (Some(a), Some(b)) = (self.side(axis), other.side(axis)) {
                *v = b as i32 - a as i32;
            }
        }
        t
    }

    pub fn slot(&self) -> usize {
        (self.fixed as usize) * 8 + self.sides as usize
    }

    /// Every boundary entity of a `dim`-dimensional tile, ordered by fixed
    /// mask and then by sides.
    pub fn all(dim: usize) -> Vec<Entity> {
        let full = (1u8 << dim) - 1;
        let mut out = Vec::new();
        for fixed in 1..=full {
            for sides in 0..=full {
                if sides & !fixed == 0 {
                    out.push(Entity { fixed, sides });
                }
            }
        }
        out
    }
}
