//! Toy-scale cryptanalysis and the combinatorics of bracketing classes:
//! DELP solvers, partition censuses with their entropies, the collision
//! entropy experiment, the table-building forgery attempt and the
//! reference tables for small entropoids.

mod census;
mod collision;
mod delp;
mod entropy;
mod mitm;
mod partition;
mod tables;

pub use collision::{
    collision_entropy_experiment, collision_samples, random_instance, slope, COLLISION_ESTIMATOR, COLLISION_SAMPLE_CAP,
};
pub use delp::{delp_brute, delp_random, delp_solutions, BRUTE_LIMIT};
pub use entropy::{entropy_min, entropy_renyi, entropy_shannon, probabilities};
pub use mitm::{mitm_success_rate, mitm_toy_attack, Forgery, MitmReport, MitmStats, MITM_LIMIT, MITM_TARGET_RATE};
pub use partition::{
    conjecture3_check, conjecture3_predict, partition_xi, partitions_to_csv, PartitionClass, PartitionReport,
    MEMBER_PATTERN_LIMIT, PARTITION_LIMIT,
};
pub use tables::{
    census_levels, dichotomy_entropoid, dichotomy_reports, order_grids, reproduce_tables, small_entropoid, OrderGrids,
    Table, TableSet, DICHOTOMY_ENTROPOID, DICHOTOMY_GENERATOR, SMALL_ENTROPOIDS,
};
