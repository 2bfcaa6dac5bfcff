//! Finite groups as multiplication tables, plus the subgroup-level
//! structure theory the rest of the engine consumes.

mod structure;
mod table;

pub use table::{
    build_group_from_perms, GroupTable, Homomorphism, Perm, Subgroup, DEFAULT_ORDER_CAP,
};
