//! Exact computation and certification engine for Hecke-algebra
//! antisymmetrizer identities.
//!
//! The crate has three layers:
//!
//! * exact arithmetic ([`qarith`]) in Z[q, q^-1] and Q(q), with quantum
//!   integers and unit-circle evaluation;
//! * exact algebra: the Hecke algebra in its permutation basis ([`hecke`]),
//!   the antisymmetrizer towers ([`projector`]), the Temperley-Lieb diagram
//!   algebra ([`tl`]), and the relation certifier ([`certify`]) with its
//!   numeric regular-representation oracle;
//! * numeric representations on tensor powers of C^n ([`rep`]).

pub mod certify;
pub mod error;
pub mod hecke;
pub mod projector;
pub mod qarith;
pub mod rep;
pub mod tl;

pub use certify::{Relation, RelationCertificate};
pub use error::{Error, Result};
pub use hecke::{HeckeElement, Permutation};
pub use projector::AntisymmetrizerTower;
pub use qarith::{eval_unit_circle, qint, qint_identities_check, LaurentPoly, RatFunc, UnitCircleQ};
pub use rep::DenseOperator;
pub use tl::{TlDiagram, TlElement};

// Values are immutable after construction and all operations are pure, so
// every element type is safe to move or share across workers.
const _: () = {
    const fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<HeckeElement>();
    assert_send_sync::<TlElement>();
    assert_send_sync::<LaurentPoly>();
    assert_send_sync::<RatFunc>();
    assert_send_sync::<AntisymmetrizerTower>();
    assert_send_sync::<DenseOperator>();
    assert_send_sync::<RelationCertificate>();
};
