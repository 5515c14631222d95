//! Exact counting of subsets, multisets and partitions with a prescribed sum
//! over finite abelian groups.
//!
//! For a finite abelian group `G = Z_{n_1} x ... x Z_{n_k}`, a domain
//! `D = G \ S`, a size `i` and a target `g`, this crate counts
//!
//! - `M(D, i, g)`: multisets of `i` elements of `D` summing to `g`,
//! - `N(D, i, g)`: subsets of `i` distinct elements of `D` summing to `g`,
//! - `P_G(i, g)`: partitions of `g` into `i` nonzero parts, i.e. `M(G \ {0}, i, g)`.
//!
//! The full-group counts come from closed forms driven by a Möbius sum over the
//! divisor lattice of the exponent ([`closed_form`]). Restricted domains are
//! handled by inclusion-exclusion and peeling recursions ([`restricted`]).
//! Everything is cross-checked against enumeration and group-ring power series
//! ([`oracle`]) by the sweep in [`verify`].
//!
//! ```
//! use multisum::{closed_form, GroupSpec};
//!
//! let z4: GroupSpec = "Z4".parse().unwrap();
//! let one = z4.parse_element("1").unwrap();
//! assert_eq!(closed_form::m_full(&z4, 3, &one).unwrap(), 5u32.into());
//! ```

pub mod closed_form;
mod error;
pub mod group;
pub mod numtheory;
pub mod oracle;
pub mod restricted;
pub mod table;
pub mod verify;

pub use error::{Error, Result};
pub use group::{GroupElement, GroupSpec};
pub use numtheory::Count;
pub use restricted::ExcludedSet;
pub use table::{CountTable, Quantity};
