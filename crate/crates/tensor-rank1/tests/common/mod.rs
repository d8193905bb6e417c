//! Shared fixtures for the integration suites: the worked examples from
//! the numerical-experiments literature on rank-1 tensor approximation.

#![allow(dead_code)]

use tensor_rank1::tensor::{GenTensor, SymTensor};

/// Cubic tensor over R^2 with best rank-1 value 3.1155.
pub fn cubic_dim2() -> SymTensor {
    let mut t = SymTensor::new(2, 3);
    t.set(&[0, 0, 0], 1.5578).unwrap();
    t.set(&[1, 1, 1], 1.1226).unwrap();
    t.set(&[0, 0, 1], -2.4443).unwrap();
    t.set(&[0, 1, 1], -1.0982).unwrap();
    t
}

/// Cubic tensor over R^3 with best rank-1 value 0.8730.
pub fn cubic_dim3_a() -> SymTensor {
    let mut t = SymTensor::new(3, 3);
    for (idx, v) in [
        ([0, 0, 0], -0.1281),
        ([0, 0, 1], 0.0516),
        ([0, 0, 2], -0.0954),
        ([0, 1, 1], -0.1958),
        ([0, 1, 2], -0.1790),
        ([0, 2, 2], -0.2676),
        ([1, 1, 1], 0.3251),
        ([1, 1, 2], 0.2513),
        ([1, 2, 2], 0.1773),
        ([2, 2, 2], 0.0338),
    ] {
        t.set(&idx, v).unwrap();
    }
    t
}

/// Cubic tensor over R^3 with best rank-1 value 2.1110.
pub fn cubic_dim3_b() -> SymTensor {
    let mut t = SymTensor::new(3, 3);
    for (idx, v) in [
        ([0, 0, 0], 0.0517),
        ([0, 0, 1], 0.3579),
        ([0, 0, 2], 0.5298),
        ([0, 1, 1], 0.7544),
        ([0, 1, 2], 0.2156),
        ([0, 2, 2], 0.3612),
        ([1, 1, 1], 0.3943),
        ([1, 1, 2], 0.0146),
        ([1, 2, 2], 0.6718),
        ([2, 2, 2], 0.9723),
    ] {
        t.set(&idx, v).unwrap();
    }
    t
}

/// Quartic tensor over R^3 whose best rank-1 value is -1.0954 (the
/// minimization branch wins).
pub fn quartic_dim3() -> SymTensor {
    let mut t = SymTensor::new(3, 4);
    for (idx, v) in [
        ([0, 0, 0, 0], 0.2883),
        ([0, 0, 0, 1], -0.0031),
        ([0, 0, 0, 2], 0.1973),
        ([0, 0, 1, 1], -0.2485),
        ([0, 0, 1, 2], -0.2939),
        ([0, 0, 2, 2], 0.3847),
        ([0, 1, 1, 1], 0.2972),
        ([0, 1, 1, 2], 0.1862),
        ([0, 1, 2, 2], 0.0919),
        ([0, 2, 2, 2], -0.3619),
        ([1, 1, 1, 1], 0.1241),
        ([1, 1, 1, 2], -0.3420),
        ([1, 1, 2, 2], 0.2127),
        ([1, 2, 2, 2], 0.2727),
        ([2, 2, 2, 2], -0.3054),
    ] {
        t.set(&idx, v).unwrap();
    }
    t
}

/// Sparse 2x2x2x2 tensor with best rank-1 value 25.6 on coordinate axes.
pub fn nonsym_2222() -> GenTensor {
    let mut t = GenTensor::zeros(&[2, 2, 2, 2]);
    t.set(&[0, 0, 0, 0], 25.1).unwrap();
    t.set(&[0, 1, 0, 1], 25.6).unwrap();
    t.set(&[1, 0, 1, 0], 24.8).unwrap();
    t.set(&[1, 1, 1, 1], 23.0).unwrap();
    t
}

/// Dense 3x3x3 tensor with best rank-1 value 2.8167.
pub fn nonsym_333() -> GenTensor {
    let vals = [
        0.4333, 0.4278, 0.4140, 0.8154, 0.0199, 0.5598, 0.0643, 0.3815, 0.8834, 0.4866, 0.8087,
        0.2073, 0.7641, 0.9924, 0.8752, 0.6708, 0.8296, 0.1325, 0.3871, 0.0769, 0.3151, 0.1355,
        0.7727, 0.4089, 0.9715, 0.7726, 0.5526,
    ];
    // Values are listed slice by slice in the last mode, row index first.
    let mut t = GenTensor::zeros(&[3, 3, 3]);
    let mut p = 0;
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                t.set(&[i, j, k], vals[p]).unwrap();
                p += 1;
            }
        }
    }
    t
}
