#!/usr/bin/env python3
#
# Copyright 2026 The rsmiles Authors.
# SPDX-License-Identifier: Apache-2.0
#
"""Build the bundled atom-mapped reaction sample and its reference statistics.

Reactions are produced by applying common medicinal-chemistry transformations
(amide coupling, Suzuki coupling, Boc removal, ...) to a pool of building
blocks with RDKit. Atom maps are derived from RDKit's reactant bookkeeping:
every product atom gets a map number, leaving-group atoms stay unmapped.

The reference statistics are computed with RDKit's own canonical and rooted
SMILES writers, independently of the C++ implementation, and frozen into
tests/data/uspto_sample_1k.oracle.json.

Requires: rdkit (pip install rdkit).
"""

import argparse
import json
import random
import sys

from rdkit import Chem, RDLogger
from rdkit.Chem import AllChem

RDLogger.DisableLog("rdApp.*")

ACIDS = [
    "OC(=O)c1ccccc1", "OC(=O)c1ccc(Cl)cc1", "OC(=O)c1ccc(OC)cc1",
    "OC(=O)c1cccnc1", "OC(=O)c1ccc(C(F)(F)F)cc1", "OC(=O)CCc1ccccc1",
    "OC(=O)c1ccc2ccccc2c1", "OC(=O)C1CCN(C(=O)OC(C)(C)C)CC1",
    "OC(=O)c1cc(F)cc(F)c1", "OC(=O)Cc1ccc(Br)cc1", "OC(=O)c1ccoc1",
    "OC(=O)c1ccsc1", "OC(=O)C1CC1", "OC(=O)c1cnc2ccccc2c1",
    "OC(=O)[C@@H]1CCCN1C(=O)OC(C)(C)C", "OC(=O)c1ccc(-n2cccn2)cc1",
    "OC(=O)COc1ccccc1", "OC(=O)c1cc(C)on1", "OC(=O)c1ccc(S(C)(=O)=O)cc1",
    "OC(=O)c1ccc([N+](=O)[O-])cc1", "OC(=O)c1ccc(C(=O)OC)cc1",
    "OC(=O)c1cc2cc(Cl)ccc2[nH]1", "OC(=O)c1ccc(N2CCN(C(=O)OC(C)(C)C)CC2)nc1",
    "OC(=O)[C@H](Cc1ccccc1)NC(=O)OC(C)(C)C", "OC(=O)c1ccc(Oc2ccccc2)cc1",
]
AMINES = [
    "NCc1ccccc1", "NCCc1ccc(O)cc1", "C1CCNCC1", "C1COCCN1", "CN1CCNCC1",
    "Nc1ccccc1", "Nc1ccc(F)cc1", "Nc1ccncc1", "NC1CCCCC1",
    "N[C@@H](C)c1ccccc1", "CNCc1ccccc1", "NCC(F)(F)F", "Nc1cccc(Cl)c1",
    "NCc1ccco1", "NC1CC1", "O=C(OC(C)(C)C)N1CCNCC1", "Nc1ccc2[nH]ccc2c1",
    "NCCN1CCOCC1", "N[C@H]1CCOC1", "NCc1ccc(OC)c(OC)c1",
    "NCc1ccc(C(=O)OC)cc1", "Nc1ccc([N+](=O)[O-])cc1", "NC1CCN(C(=O)OC(C)(C)C)CC1",
    "Nc1ccc(C#N)cc1", "CC(C)(C)OC(=O)NCCN", "COC(=O)[C@@H](N)Cc1ccccc1",
    "NCc1ccc(-c2ccccc2)cc1", "Nc1cc(C(F)(F)F)ccc1N1CCOCC1",
]
ALCOHOLS = [
    "OCC", "OC", "OCc1ccccc1", "OCC(Cl)(Cl)Cl", "OC(C)C", "OCCOC",
    "OCc1ccc(F)cc1", "OC1CCCC1",
]
PHENOLS = [
    "Oc1ccccc1", "Oc1ccc(C#N)cc1", "Oc1ccc(Cl)cc1C", "Oc1cccc2ccccc12",
    "Oc1ccc(C(=O)OC)cc1", "Oc1ccncc1",
]
ALKYL_HALIDES = [
    "BrCc1ccccc1", "BrCC(=O)OCC", "ICC", "BrCCCCl", "BrCc1ccc(F)cc1",
    "BrCC1CC1", "ClCc1ccncc1", "BrCCOC", "BrCc1ccc(C#N)cc1",
]
ARYL_BROMIDES = [
    "Brc1ccccc1", "Brc1ccc(C(=O)OC)cc1", "Brc1cccnc1", "Brc1ccc(OC)cc1",
    "Brc1ccc2ccccc2c1", "Brc1cncnc1", "Brc1ccc(N2CCOCC2)cc1",
    "Brc1ccc(C#N)cc1F", "Brc1csc(C)n1", "Brc1ccc([N+](=O)[O-])cc1",
    "COC(=O)c1ccc(Br)c(OC)c1", "Brc1ccc(CN2CCN(C(=O)OC(C)(C)C)CC2)cc1",
]
BORONIC_ACIDS = [
    "OB(O)c1ccccc1", "OB(O)c1ccc(F)cc1", "OB(O)c1ccc(OC)cc1",
    "OB(O)c1cccc(C(F)(F)F)c1", "OB(O)c1ccc2OCOc2c1", "OB(O)c1cnc(C)nc1",
    "OB(O)c1ccoc1",
]
ALDEHYDES = [
    "O=Cc1ccccc1", "O=Cc1ccc(Cl)cc1", "O=Cc1ccncc1", "O=CC1CCCCC1",
    "O=Cc1ccc(OC)cc1", "O=Cc1cccs1",
]
SULFONYL_CHLORIDES = [
    "O=S(=O)(Cl)c1ccccc1", "O=S(=O)(Cl)c1ccc(C)cc1", "CS(=O)(=O)Cl",
    "O=S(=O)(Cl)c1cccs1",
]
ACYL_CHLORIDES = [
    "C=CC(=O)Cl", "CC(=O)Cl", "O=C(Cl)c1ccccc1", "O=C(Cl)c1ccc(F)cc1",
    "O=C(Cl)C1CC1", "O=C(Cl)OCc1ccccc1",
]
HETARYL_CHLORIDES = [
    "Clc1ncccn1", "Clc1ccc([N+](=O)[O-])cn1", "Clc1ncnc2ccccc12",
    "Clc1nccc(C)n1", "Clc1ccc(C#N)cn1",
]
EPOXIDES = ["C1CO1", "CC1CO1", "c1ccc(C2CO2)cc1", "C1OC1COc1ccccc1"]

TEMPLATES = {
    "amide_coupling": (
        "[C:1](=[O:2])[OX2H1].[N;!H0;!$(NC=O);!$(NS=O):3]>>[C:1](=[O:2])[N:3]",
        [ACIDS, AMINES]),
    "acyl_chloride_amide": (
        "[C:1](=[O:2])Cl.[N;!H0;!$(NC=O);!$(NS=O):3]>>[C:1](=[O:2])[N:3]",
        [ACYL_CHLORIDES, AMINES]),
    "acyl_chloride_ester": (
        "[C:1](=[O:2])Cl.[OX2H1;$(O[CX4]):3]>>[C:1](=[O:2])[O:3]",
        [ACYL_CHLORIDES, ALCOHOLS]),
    "esterification": (
        "[C:1](=[O:2])[OX2H1].[OX2H1;$(O[CX4]):3]>>[C:1](=[O:2])[O:3]",
        [ACIDS, ALCOHOLS]),
    "sulfonamide": (
        "[S:1](=[O:2])(=[O:3])Cl.[N;!H0;!$(NC=O);!$(NS=O):4]>>[S:1](=[O:2])(=[O:3])[N:4]",
        [SULFONYL_CHLORIDES, AMINES]),
    "n_alkylation": (
        "[CH2:1][Br,I,Cl].[N;!H0;!$(NC=O);!$(NS=O);!$(Nc):2]>>[CH2:1][N:2]",
        [ALKYL_HALIDES, AMINES]),
    "o_alkylation": (
        "[CH2:1][Br,I,Cl].[OX2H1:2][c:3]>>[CH2:1][O:2][c:3]",
        [ALKYL_HALIDES, PHENOLS]),
    "suzuki": (
        "[c:1]Br.[c:2]B(O)O>>[c:1]-[c:2]",
        [ARYL_BROMIDES, BORONIC_ACIDS]),
    "reductive_amination": (
        "[CH1:1]=O.[N;!H0;!$(NC=O);!$(NS=O);!$(Nc):2]>>[CH2:1][N:2]",
        [ALDEHYDES, AMINES]),
    "snar": (
        "[c:1]Cl.[N;!H0;!$(NC=O);!$(NS=O):2]>>[c:1][N:2]",
        [HETARYL_CHLORIDES, AMINES]),
    "epoxide_opening": (
        "[C:1]1[O:2][C:3]1.[N;!H0;!$(NC=O);!$(NS=O);!$(Nc):4]>>[C:1]([OH1:2])[C:3][N:4]",
        [EPOXIDES, AMINES]),
}

# single-reactant deprotections / functional group interconversions
UNARY = {
    "boc_deprotection": "[N:1]C(=O)OC(C)(C)C>>[N:1]",
    "ester_hydrolysis": "[C:1](=[O:2])[O:3][CH3]>>[C:1](=[O:2])[OH1:3]",
    "nitro_reduction": "[c:1][N+:2](=O)[O-]>>[c:1][NH2+0:2]",
    "benzyl_ether_cleavage": "[C,c:1][O:2][CH2]c1ccccc1>>[C,c:1][OH1:2]",
}


def mapped_reaction(rxn, reactants):
    """Runs one template and returns 'reactants>>product' with atom maps."""
    reactants = [Chem.Mol(m) for m in reactants]
    outcomes = rxn.RunReactants(tuple(reactants))
    if not outcomes:
        return None
    product = outcomes[0][0]
    try:
        Chem.SanitizeMol(product)
    except Exception:
        return None
    # Product maps follow atom order; reactant atoms inherit them via the
    # bookkeeping RDKit attaches to every product atom.
    mapped = {}
    for atom in product.GetAtoms():
        props = atom.GetPropsAsDict()
        if "react_idx" not in props:
            # atom created by the template (e.g. the NH2 of a nitro
            # reduction): carries no map, reactant side has no partner
            continue
        num = len(mapped) + 1
        atom.SetAtomMapNum(num)
        mapped[(props["react_idx"], props["react_atom_idx"])] = num
    if len(mapped) != product.GetNumAtoms():
        return None
    for r, mol in enumerate(reactants):
        for atom in mol.GetAtoms():
            atom.SetAtomMapNum(mapped.get((r, atom.GetIdx()), 0))
    used = [m for m in reactants if any(a.GetAtomMapNum() for a in m.GetAtoms())]
    if len(used) != len(reactants):
        return None
    lhs = ".".join(Chem.MolToSmiles(m) for m in reactants)
    rhs = Chem.MolToSmiles(product)
    return f"{lhs}>>{rhs}"


def random_product(compiled, rng):
    rxn, pools = compiled[rng.choice(sorted(compiled))]
    smis = [rng.choice(p) for p in pools]
    outcomes = rxn.RunReactants(tuple(Chem.MolFromSmiles(s) for s in smis))
    if not outcomes:
        return None
    substrate = outcomes[0][0]
    try:
        Chem.SanitizeMol(substrate)
    except Exception:
        return None
    return Chem.MolFromSmiles(Chem.MolToSmiles(substrate))


def build(n, seed):
    rng = random.Random(seed)
    compiled = {k: (AllChem.ReactionFromSmarts(s), pools)
                for k, (s, pools) in TEMPLATES.items()}
    unary = {k: AllChem.ReactionFromSmarts(s) for k, s in UNARY.items()}
    out, seen = [], set()
    attempts = 0
    while len(out) < n and attempts < 200 * n:
        attempts += 1
        # roughly a quarter single-step interconversions, as in USPTO-50K
        if rng.random() < 0.27:
            name = rng.choice(sorted(unary))
        else:
            name = rng.choice(sorted(compiled))
        if name in compiled:
            rxn, pools = compiled[name]
            smis = [rng.choice(p) for p in pools]
            text = mapped_reaction(rxn, [Chem.MolFromSmiles(s) for s in smis])
        else:
            # build a substrate with one of the binary templates first, then
            # apply the interconversion to it
            text = None
            for _ in range(50):
                substrate = random_product(compiled, rng)
                if substrate is not None and substrate.HasSubstructMatch(
                        unary[name].GetReactantTemplate(0)):
                    text = mapped_reaction(unary[name], [substrate])
                    break
        if text is None or text in seen:
            continue
        seen.add(text)
        out.append((name, text))
    return out


def levenshtein(a, b):
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def strip_maps(mol):
    mol = Chem.Mol(mol)
    for atom in mol.GetAtoms():
        atom.SetAtomMapNum(0)
    return mol


def rdkit_pair(text, root=None):
    """Canonical and root-aligned P2R pair via RDKit.

    The product root defaults to RDKit's canonical root atom.
    """
    lhs, _, rhs = text.split(">")
    product = Chem.MolFromSmiles(rhs)
    reactants = [Chem.MolFromSmiles(s) for s in lhs.split(".")]
    plain_src = Chem.MolToSmiles(strip_maps(product))
    plain_tgt = Chem.MolToSmiles(strip_maps(Chem.MolFromSmiles(lhs)))

    bare = strip_maps(product)
    if root is None:
        Chem.MolToSmiles(bare)
        root = list(bare.GetPropsAsDict(True, True)["_smilesAtomOutputOrder"])[0]
    src = Chem.MolToSmiles(bare, rootedAtAtom=root, canonical=True)
    order = list(bare.GetPropsAsDict(True, True)["_smilesAtomOutputOrder"])
    position = {product.GetAtomWithIdx(i).GetAtomMapNum(): pos
                for pos, i in enumerate(order)}
    aligned, rest = [], []
    for mol in reactants:
        best = None
        for atom in mol.GetAtoms():
            pos = position.get(atom.GetAtomMapNum()) if atom.GetAtomMapNum() else None
            if pos is not None and (best is None or pos < best[0]):
                best = (pos, atom.GetIdx())
        if best is None:
            rest.append(Chem.MolToSmiles(strip_maps(mol)))
        else:
            aligned.append((best[0], Chem.MolToSmiles(
                strip_maps(mol), rootedAtAtom=best[1], canonical=True)))
    aligned.sort()
    tgt = ".".join([s for _, s in aligned] + sorted(rest))
    return plain_src, plain_tgt, src, tgt


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=20260101)
    ap.add_argument("--out", default="tests/data/uspto_sample_1k.csv")
    ap.add_argument("--oracle", default="tests/data/uspto_sample_1k.oracle.json")
    args = ap.parse_args()

    records = build(args.n, args.seed)
    if len(records) < args.n:
        sys.exit(f"only {len(records)} distinct reactions generated")
    plain, aligned, all_roots, plen, rlen = [], [], [], [], []
    with open(args.out, "w", newline="\n") as fh:
        fh.write("id,class,reactants>reagents>production\n")
        for i, (name, text) in enumerate(records):
            fh.write(f"S{i:04d},{name},{text}\n")
            ps, pt, s, t = rdkit_pair(text)
            plain.append(levenshtein(ps, pt))
            aligned.append(levenshtein(s, t))
            n_atoms = Chem.MolFromSmiles(text.split(">")[2]).GetNumAtoms()
            per_root = [levenshtein(*rdkit_pair(text, r)[2:])
                        for r in range(n_atoms)]
            all_roots.append(sum(per_root) / n_atoms)
            plen.append(len(ps))
            rlen.append(len(pt))
    n = len(records)
    oracle = {
        "source": "RDKit " + Chem.rdBase.rdkitVersion,
        "n_records": n,
        "mean_product_len": sum(plen) / n,
        "mean_reactant_len": sum(rlen) / n,
        "mean_edit_distance_plain": sum(plain) / n,
        "mean_edit_distance_aligned": sum(aligned) / n,
        # every product atom used once as root, averaged per record
        "mean_edit_distance_aligned_all_roots": sum(all_roots) / n,
    }
    with open(args.oracle, "w") as fh:
        json.dump(oracle, fh, indent=2)
        fh.write("\n")
    print(json.dumps(oracle, indent=2))


if __name__ == "__main__":
    main()
