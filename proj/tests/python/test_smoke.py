# Copyright 2026 The corrlab Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

cl = pytest.importorskip("_corrlab")


def test_fixture_roundtrip():
    st = cl.make_fixture("ghz:4", 0)
    assert st.n == 4
    assert st.site_dim == 2
    amps = np.asarray(st.amplitudes)
    assert amps.shape == (16,)
    assert abs(amps[0]) == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-12)
    assert abs(amps[15]) == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-12)


def test_reduced_density_and_entropy():
    st = cl.make_fixture("ghz:6", 0)
    rho = cl.reduced_density(st, cl.Region(0, 3))
    mat = np.asarray(rho.mat)
    assert mat.shape == (8, 8)
    assert rho.trace() == pytest.approx(1.0, abs=1e-12)
    # Any GHZ cut carries exactly one bit.
    assert cl.von_neumann(mat) == pytest.approx(1.0, abs=1e-9)
    rep = cl.hmax_smooth(mat, 0.0)
    assert rep.value_lower == pytest.approx(1.0, abs=1e-9)
    assert rep.value_upper == pytest.approx(1.0, abs=1e-9)


def test_metrics_agree_with_numpy():
    rng = np.random.default_rng(5)
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = g @ g.conj().T
    rho /= np.trace(rho).real
    assert cl.fidelity(rho, rho) == pytest.approx(1.0, abs=1e-9)
    assert cl.purified_distance(rho, rho) == pytest.approx(0.0, abs=1e-6)
    assert cl.d1_distance(rho, rho) == pytest.approx(0.0, abs=1e-9)


def test_correlation_estimate_bell():
    phi = np.zeros(4, dtype=complex)
    phi[0] = phi[3] = 1.0 / math.sqrt(2.0)
    rho = np.outer(phi, phi.conj())
    est = cl.correlation_estimate(rho, 2, 2)
    assert est.upper == pytest.approx(1.5, abs=1e-9)
    assert est.lower >= 1.0 - 1e-9


def test_hmin_conditional_maximally_entangled():
    phi = np.zeros(4, dtype=complex)
    phi[0] = phi[3] = 1.0 / math.sqrt(2.0)
    rho = np.outer(phi, phi.conj())
    assert cl.hmin_conditional(rho, 2, 2) == pytest.approx(-1.0, abs=1e-6)


def test_edc_certify_verdicts():
    near_product = cl.make_fixture("tfim:8:1000000", 0)
    assert cl.edc_certify(near_product, 1.0, 1).verdict == "certified"
    cert = cl.edc_certify(cl.make_fixture("ghz:8", 0), 2.0, 1)
    assert cert.verdict == "violated"
    assert len(cert.samples) > 0
