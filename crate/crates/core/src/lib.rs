//! Multilayer world input-output networks.
//!
//! Countries are nodes and sectors are layers. A network of `N` countries
//! and `L` sectors is stored as an `NL x NL` supra matrix in layer-major
//! order (cell `(node, layer)` sits at index `layer * N + node`); rows sell
//! to columns.
//!
//! - [`net`]: the network model and its transforms.
//! - [`metrics`]: strengths, degrees, HHI concentration and correlations.
//! - [`layers`]: layer-pair statistics and layer dendrograms.
//! - [`communicability`]: `exp(A)`, centralities, distance and quality.
//! - [`community`]: threshold-sweep detection, reports and rankings.
//! - [`io`]: input formats, snapshots and report tables.

pub mod communicability;
pub mod community;
pub mod error;
pub mod exec;
pub mod expm;
pub mod io;
pub mod layers;
pub mod metrics;
pub mod net;
pub mod synthetic;

pub use communicability::{
    broadcast_centrality, centrality_table, cohesion, communicability, distance_field, distance_field_with,
    quality, receive_centrality, CommunicabilityField, CommunicabilityMode, DistanceField, LayerSel,
    MeanConvention,
};
pub use community::{
    community_members, community_report, community_report_with, components_at_threshold, detect_communities,
    detect_monolayer, detect_on_distance, detection_fields, rank_members, CommunityReport, Detection, Partition,
    RankDirection, ReportOptions, ReportRow, SweepPoint, SweepTrace,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use expm::{expm, expm_with, ExpmMethod};
pub use layers::{
    hcluster_layers, jaccard_sector_similarity, jaccard_table, layer_pair_table, layer_pair_table_with, BlockMode,
    Dendrogram, LayerPairKind, LayerPairTable, Merge,
};
pub use metrics::{
    gini_heterogeneity, hhi, hhi_table, pearson, strength_profile, strength_table, ConcentrationIndex, StrengthKind,
    StrengthProfile,
};
pub use net::{Cell, Direction, MemberSet, Meta, MultilayerNetwork, NormalizeMode, SubNetwork, SupraIndex};
