# Copyright 2026 The chiralq Authors
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


"""Export active-space integrals and property integrals for chiralq.

Reads a JSON request, runs RHF (and MP2 for natural occupations) with pyscf,
and writes three files next to the requested prefix:

  <prefix>.fcidump      one- and two-electron integrals, chemists' notation
  <prefix>.props        dipole and magnetic-dipole integrals
  <prefix>.ref.csv      mean-field, FCI/CASCI reference energies, occupations

Geometry is in Angstrom; the gauge origin is in Bohr.
"""

import argparse
import hashlib
import json
import sys
from pathlib import Path

import numpy as np
from pyscf import ao2mo, fci, gto, mcscf, mp, scf


def load_request(path):
    with open(path) as fh:
        req = json.load(fh)
    req.setdefault("basis", "sto-3g")
    req.setdefault("origin", [0.0, 0.0, 0.0])
    req.setdefault("nroots", 6)
    req.setdefault("orbitals", "canonical")
    if not req.get("geometry"):
        raise SystemExit("request has no geometry")
    return req


def build_molecule(req):
    atom = [(a[0], tuple(a[1:4])) for a in req["geometry"]]
    mol = gto.M(atom=atom, basis=req["basis"], unit="Angstrom", spin=0,
                verbose=0)
    if mol.nelectron % 2:
        raise SystemExit("open-shell molecules are not supported")
    return mol


def orbital_basis(mol, mf, kind):
    pt = mp.MP2(mf).run(verbose=0)
    dm_mo = pt.make_rdm1()
    if kind == "canonical":
        return mf.mo_coeff, np.diag(dm_mo).copy()
    if kind == "mp2-natural":
        occ, vec = np.linalg.eigh(dm_mo)
        order = np.argsort(-occ, kind="stable")
        return mf.mo_coeff @ vec[:, order], occ[order]
    raise SystemExit(f"unknown orbital choice {kind!r}")


def property_integrals(mol, C, origin):
    with mol.with_common_orig(origin):
        r = mol.intor_symmetric("int1e_r", comp=3)
        rxd = mol.intor("int1e_cg_irxp", comp=3)
    dip = np.array([-(C.T @ r[a] @ C) for a in range(3)])
    mag = np.array([0.5 * (C.T @ rxd[a] @ C) for a in range(3)])
    return dip, mag


def write_fcidump(path, h, g, nelec, ecore):
    n = h.shape[0]
    with open(path, "w") as fh:
        fh.write(f"&FCI NORB={n},NELEC={nelec},MS2=0,\n")
        fh.write(" ORBSYM=" + "1," * n + "\n ISYM=1,\n&END\n")
        for p in range(n):
            for q in range(p + 1):
                for r in range(n):
                    for s in range(r + 1):
                        if p * (p + 1) // 2 + q < r * (r + 1) // 2 + s:
                            continue
                        v = g[p, q, r, s]
                        if abs(v) > 1e-14:
                            fh.write(f"{v:.17g} {p+1} {q+1} {r+1} {s+1}\n")
        for p in range(n):
            for q in range(p + 1):
                if abs(h[p, q]) > 1e-14:
                    fh.write(f"{h[p, q]:.17g} {p+1} {q+1} 0 0\n")
        fh.write(f"{ecore:.17g} 0 0 0 0\n")


def write_props(path, dip, mag, origin, checksum):
    n = dip.shape[1]
    with open(path, "w") as fh:
        fh.write(f"# orbitals sha256 {checksum}\n")
        fh.write(f"NORB {n}\n")
        fh.write("ORIGIN {:.17g} {:.17g} {:.17g}\n".format(*origin))
        for a, ax in enumerate("XYZ"):
            for p in range(n):
                for q in range(p, n):
                    if abs(dip[a, p, q]) > 1e-14:
                        fh.write(f"DIPOLE {ax} {p+1} {q+1} {dip[a, p, q]:.17g}\n")
        for a, ax in enumerate("XYZ"):
            for p in range(n):
                for q in range(p + 1, n):
                    if abs(mag[a, p, q]) > 1e-14:
                        fh.write(f"ANGMOM {ax} {p+1} {q+1} {mag[a, p, q]:.17g}\n")


def export(req, prefix):
    mol = build_molecule(req)
    mf = scf.RHF(mol).run(verbose=0)
    if not mf.converged:
        raise SystemExit("SCF did not converge")
    C, occ = orbital_basis(mol, mf, req["orbitals"])
    n = C.shape[1]
    h = C.T @ mf.get_hcore() @ C
    g = ao2mo.restore(1, ao2mo.kernel(mol, C), n)
    ecore = mol.energy_nuc()
    dip, mag = property_integrals(mol, C, req["origin"])
    checksum = hashlib.sha256(np.round(C, 10).tobytes()).hexdigest()

    write_fcidump(f"{prefix}.fcidump", h, g, mol.nelectron, ecore)
    write_props(f"{prefix}.props", dip, mag, req["origin"], checksum)

    rows = [("hf_energy", mf.e_tot), ("n_orbitals", n),
            ("n_electrons", mol.nelectron)]
    nroots = req["nroots"]
    if "ncas" in req:
        cas = mcscf.CASCI(mf, req["ncas"], req["nelecas"])
        cas.fcisolver.nroots = nroots
        cas.fcisolver.spin = 0
        mo = C
        if "cas_orbitals" in req:
            mo = cas.sort_mo([i + 1 for i in req["cas_orbitals"]], C)
        e = np.atleast_1d(cas.kernel(mo)[0])
        rows += [("ncore", cas.ncore), ("ncas", req["ncas"]),
                 ("nelecas", req["nelecas"])]
        rows += [(f"casci_energy_{k}", v) for k, v in enumerate(e)]
    else:
        solver = fci.direct_spin1.FCI()
        solver.nroots = nroots
        solver.spin = 0
        e, _ = solver.kernel(h, g, n, mol.nelectron, ecore=ecore)
        rows += [(f"fci_energy_{k}", v) for k, v in enumerate(np.atleast_1d(e))]
    rows += [(f"occupation_{k}", v) for k, v in enumerate(occ)]
    rows.append(("orbital_sha256", checksum))
    with open(f"{prefix}.ref.csv", "w") as fh:
        fh.write("key,value\n")
        for k, v in rows:
            fh.write(f"{k},{v:.17g}\n" if isinstance(v, float) else f"{k},{v}\n")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("request", help="JSON export request")
    ap.add_argument("--out", required=True, help="output prefix")
    args = ap.parse_args(argv)
    export(load_request(args.request), args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
