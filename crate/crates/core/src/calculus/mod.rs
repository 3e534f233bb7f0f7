//! Kirby-move scripts and the pipelines built on them.
//!
//! Scripts replay on a diagram and its linking matrix in lockstep. On top of
//! them sit the unknotting of surgery links by blow-up gadgets, embedding
//! certificates for links of unknots, and the definite-form obstruction.
//! Free-group words model loops read off their intersections with meridian
//! discs.

mod certificate;
mod moves;
mod obstruction;
mod unknotify;
mod word;

pub use certificate::{
    build_embedding_certificate, verify_certificate, CertificateError, CertificateOptions,
    CertificateReport, Check, EmbeddingCertificate, CERTIFICATE_CHECKS,
};
pub use moves::{apply_move, replay, KirbyMove, MoveError, MoveScript, Replay, ReplayError};
pub use obstruction::{donaldson_obstruction, ObstructionReport, Verdict};
pub use unknotify::{gadget_side, unknot_switch_set, unknotify, UnknotMode, Unknotified};
pub use word::{reduce_free_word, word_from_intersections, FreeWord, Letter, WordReduction};
