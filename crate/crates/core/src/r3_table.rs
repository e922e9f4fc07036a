// Frozen output of the geometric enumeration in moves::tests
// (r3_table_matches_geometric_derivation); do not edit by hand.
const R3_VALID_BITS: u64 = 0x8118_2442_4224_1881;
