#!/usr/bin/env python3
# Copyright 2026 The tabkb Authors
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
"""Writes the bundled evaluation corpus and the classifier training set.

Outputs, next to this script:
  tables.jsonl          20 unlabeled tables (extract input)
  tables_labeled.jsonl  the same tables with gold header labels
  gold_tuples.jsonl     gold property tuples, written out by hand below
  reference_db.jsonl    reference records for the supervise stage
  train.jsonl           labeled tables for the desk-scale classifier

Gold values are typed in literally next to each table; nothing here runs
the extractor.
"""

import json
import os
import random

HERE = os.path.dirname(os.path.abspath(__file__))

CODES = {
    "other": 0, "constituent": 1, "composition": 2, "material_id": 3,
    "activation_energy": 4, "annealing_point": 5,
    "crystallization_temperature": 6, "glass_transition_temperature": 7,
    "liquidus_temperature": 8, "melting_temperature": 9, "softening_point": 10,
    "thermal_expansion_coefficient": 11, "bulk_modulus": 12, "density": 13,
    "fracture_toughness": 14, "hardness": 15, "poisson_ratio": 16,
    "shear_modulus": 17, "youngs_modulus": 18, "abbe_value": 19,
    "refractive_index": 20, "electrical_conductivity": 21,
}


class T:
  """One table with gold labels and gold tuples."""

  def __init__(self, pii, tid, caption, cells, row_labels, col_labels):
    self.pii, self.tid, self.caption, self.cells = pii, tid, caption, cells
    self.row_labels, self.col_labels = row_labels, col_labels
    self.gold = []

  def prop(self, row, col, gid, key, value, unit, kind="single"):
    self.gold.append({
        "pii": self.pii, "table_index": self.tid, "row": row, "col": col,
        "material_id": gid, "property": key, "value": value, "unit": unit,
        "value_kind": kind,
    })

  def column(self, col, key, unit, values, gid_col=0, first_row=1, kinds=None):
    for i, v in enumerate(values):
      if v is None:
        continue
      r = first_row + i
      self.prop(r, col, self.cells[r][gid_col], key, v, unit,
                kinds[i] if kinds else "single")

  def row(self, row, key, unit, values, gid_row=0, first_col=1):
    for i, v in enumerate(values):
      if v is None:
        continue
      c = first_col + i
      self.prop(row, c, self.cells[gid_row][c], key, v, unit)

  def record(self, labeled):
    d = {"pii": self.pii, "table_index": self.tid, "caption": self.caption,
         "cells": self.cells}
    if labeled:
      d["row_labels"] = self.row_labels
      d["col_labels"] = self.col_labels
    return d


def L(*names):
  return [CODES[n] if isinstance(n, str) else n for n in names]


def corpus():
  out = []

  # Article 1: composition table and property table linked by glass id.
  p = "S0022-3093(21)00101-2"
  t = T(p, 0, "Nominal compositions of the soda-lime silicate glasses (mol%).",
        [["Glass", "SiO2", "Na2O", "CaO"],
         ["NCS1", "70", "15", "15"],
         ["NCS2", "72", "14", "14"],
         ["NCS3", "74", "13", "13"]],
        L("other", "constituent", "constituent", "constituent"),
        L("material_id", "composition", "composition", "composition"))
  out.append(t)
  t = T(p, 1, "Glass transition temperature and density of the glasses.",
        [["Glass", "Tg (°C)", "Density (g/cm3)"],
         ["NCS2", "563", "2.486"],
         ["NCS3", "571", "2.474"],
         ["NCS4", "578", "2.461"]],
        L("other", "other", "other", "other"),
        L("material_id", "glass_transition_temperature", "density"))
  t.column(1, "glass_transition_temperature", "degC", [563, 571, 578])
  t.column(2, "density", "g/cm3", [2.486, 2.474, 2.461])
  out.append(t)

  # Article 2: compositions and properties in one table.
  p = "S0272-8842(20)31234-5"
  t = T(p, 0, "Composition (mol%), glass transition temperature and density of the "
        "borosilicate glasses.",
        [["Sample", "SiO2 (mol%)", "B2O3 (mol%)", "Na2O (mol%)", "Tg (K)",
          "Density (g cm−3)"],
         ["BS-1", "60", "25", "15", "823", "2.412"],
         ["BS-2", "55", "30", "15", "809", "2.398"],
         ["BS-3", "50", "35", "15", "796", "2.381"],
         ["BS-4", "45", "40", "15", "784", "2.367"]],
        L("other", "constituent", "constituent", "constituent", "constituent"),
        L("material_id", "composition", "composition", "composition",
          "glass_transition_temperature", "density"))
  t.column(4, "glass_transition_temperature", "K", [823, 809, 796, 784])
  t.column(5, "density", "g/cm3", [2.412, 2.398, 2.381, 2.367])
  out.append(t)

  # Article 3: row-oriented elastic properties.
  p = "S0955-2219(19)30555-1"
  t = T(p, 0, "Elastic properties of the aluminosilicate glasses determined by "
        "ultrasonic echography.",
        [["Glass", "AS-1", "AS-2", "AS-3"],
         ["Young's modulus (GPa)", "78.2", "81.5", "84.9"],
         ["Shear modulus (GPa)", "31.6", "32.9", "34.1"],
         ["Bulk modulus (GPa)", "48.9", "50.7", "53.4"],
         ["Poisson's ratio", "0.237", "0.239", "0.245"]],
        L("material_id", "youngs_modulus", "shear_modulus", "bulk_modulus",
          "poisson_ratio"),
        L("other", "other", "other", "other"))
  t.row(1, "youngs_modulus", "GPa", [78.2, 81.5, 84.9])
  t.row(2, "shear_modulus", "GPa", [31.6, 32.9, 34.1])
  t.row(3, "bulk_modulus", "GPa", [48.9, 50.7, 53.4])
  t.row(4, "poisson_ratio", "", [0.237, 0.239, 0.245])
  out.append(t)

  # Article 4: hardness and toughness, with uncertainties.
  p = "S0022-3093(18)30777-0"
  t = T(p, 0, "Vickers hardness and indentation fracture toughness of the glasses.",
        [["Glass", "Vickers hardness (GPa)", "Fracture toughness (MPa m^1/2)"],
         ["LAS-0", "6.12 ± 0.08", "0.71 ± 0.03"],
         ["LAS-5", "6.38 ± 0.11", "0.76 ± 0.04"],
         ["LAS-10", "6.65 ± 0.09", "0.82 ± 0.05"]],
        L("other", "other", "other", "other"),
        L("material_id", "hardness", "fracture_toughness"))
  t.column(1, "hardness", "GPa", [6.12, 6.38, 6.65])
  t.column(2, "fracture_toughness", "MPa·m^0.5", [0.71, 0.76, 0.82])
  out.append(t)

  # Article 5: scaled expansion coefficient.
  p = "S0040-6031(22)00045-7"
  t = T(p, 0, "Thermal expansion coefficient and softening point from dilatometry.",
        [["Glass", "CTE (×10−7 K−1)", "Softening point (°C)"],
         ["ZB-1", "85.2", "612"],
         ["ZB-2", "88.7", "598"],
         ["ZB-3", "92.1", "587"]],
        L("other", "other", "other", "other"),
        L("material_id", "thermal_expansion_coefficient", "softening_point"))
  t.column(1, "thermal_expansion_coefficient", "1/K", [8.52e-06, 8.87e-06, 9.21e-06])
  t.column(2, "softening_point", "degC", [612, 598, 587])
  out.append(t)

  # Article 6: optical constants.
  p = "S0925-3467(20)30300-3"
  t = T(p, 0, "Optical properties: refractive index and Abbe number of the "
        "tellurite glasses.",
        [["Glass", "Refractive index", "Abbe number"],
         ["TZN-1", "2.012", "18.6"],
         ["TZN-2", "2.031", "17.9"],
         ["TZN-3", "2.048", "17.2"]],
        L("other", "other", "other", "other"),
        L("material_id", "refractive_index", "abbe_value"))
  t.column(1, "refractive_index", "", [2.012, 2.031, 2.048])
  t.column(2, "abbe_value", "", [18.6, 17.9, 17.2])
  out.append(t)

  # Article 7: ionic conductivity with activation energy.
  p = "S0167-2738(21)00210-9"
  t = T(p, 0, "Ionic conductivity at 25 °C and activation energy of the "
        "lithium thiophosphate glasses.",
        [["Sample", "σ (S/cm)", "Activation energy (eV)"],
         ["LPS-70", "1.6e-4", "0.35"],
         ["LPS-75", "2.4e-4", "0.33"],
         ["LPS-80", "3.1e-4", "0.31"]],
        L("other", "other", "other", "other"),
        L("material_id", "electrical_conductivity", "activation_energy"))
  t.column(1, "electrical_conductivity", "S/cm", [1.6e-4, 2.4e-4, 3.1e-4])
  t.column(2, "activation_energy", "eV", [0.35, 0.33, 0.31])
  out.append(t)

  # Article 8: wt% compositions and a characteristic-temperature table.
  p = "S0955-2219(21)00888-4"
  t = T(p, 0, "Chemical composition of the glass-ceramic precursors (wt%).",
        [["Code", "SiO2 (wt%)", "Al2O3 (wt%)", "MgO (wt%)"],
         ["MAS-A", "52.0", "28.0", "20.0"],
         ["MAS-B", "50.0", "30.0", "20.0"]],
        L("other", "constituent", "constituent"),
        L("material_id", "composition", "composition", "composition"))
  out.append(t)
  t = T(p, 1, "Characteristic temperatures of the MAS glasses measured by DSC.",
        [["Code", "Tg (°C)", "Crystallization temperature (°C)",
          "Liquidus temperature (°C)"],
         ["MAS-A", "798", "1012", "1345"],
         ["MAS-B", "806", "1027", "1368"]],
        L("other", "other", "other"),
        L("material_id", "glass_transition_temperature",
          "crystallization_temperature", "liquidus_temperature"))
  t.column(1, "glass_transition_temperature", "degC", [798, 806])
  t.column(2, "crystallization_temperature", "degC", [1012, 1027])
  t.column(3, "liquidus_temperature", "degC", [1345, 1368])
  out.append(t)

  # Article 9: ranges and a placeholder.
  p = "S0022-3093(19)30412-6"
  t = T(p, 0, "Annealing point and melting temperature of the phosphate glasses.",
        [["Glass", "Annealing point (°C)", "Melting temperature (°C)"],
         ["P-1", "405–415", "1050"],
         ["P-2", "418", "—"],
         ["P-3", "426", "1100"]],
        L("other", "other", "other", "other"),
        L("material_id", "annealing_point", "melting_temperature"))
  t.column(1, "annealing_point", "degC", [410, 418, 426],
           kinds=["mean_of_range", "single", "single"])
  t.column(2, "melting_temperature", "degC", [1050, None, 1100])
  out.append(t)

  # Article 10: density in kg/m3 and molar volume.
  p = "S0254-0584(20)30777-2"
  t = T(p, 0, "Density and molar volume of the bismuth borate glasses.",
        [["Sample", "Density (kg/m3)", "Molar volume (cm3/mol)"],
         ["BB10", "4120", "29.8"],
         ["BB20", "4870", "31.2"],
         ["BB30", "5590", "32.7"]],
        L("other", "other", "other", "other"),
        L("material_id", "density", "other"))
  t.column(1, "density", "kg/m3", [4120, 4870, 5590])
  out.append(t)

  # Article 11: row-oriented thermal table with a trap row.
  p = "S0022-2860(22)00333-8"
  t = T(p, 0, "Thermal parameters of the transition metal doped glasses.",
        [["Sample", "TM-Fe", "TM-Co", "TM-Ni"],
         ["Tg (°C)", "512", "518", "521"],
         ["Tm", "3", "4", "5"],
         ["Tx (°C)", "640", "651", "659"]],
        L("material_id", "glass_transition_temperature", "other",
          "crystallization_temperature"),
        L("other", "other", "other", "other"))
  t.row(1, "glass_transition_temperature", "degC", [512, 518, 521])
  t.row(3, "crystallization_temperature", "degC", [640, 651, 659])
  out.append(t)

  # Article 12: two property tables from one article, row and column.
  p = "S0008-8846(21)00444-1"
  t = T(p, 0, "Mechanical properties of the calcium aluminosilicate glasses.",
        [["Glass", "E (GPa)", "Hardness (HV)"],
         ["CAS-1", "92.4", "712"],
         ["CAS-2", "95.1", "735"]],
        L("other", "other", "other"),
        L("material_id", "youngs_modulus", "hardness"))
  t.column(1, "youngs_modulus", "GPa", [92.4, 95.1])
  t.column(2, "hardness", "HV", [712, 735])
  out.append(t)
  t = T(p, 1, "Composition of the calcium aluminosilicate glasses in mol%.",
        [["Glass", "CAS-1", "CAS-2"],
         ["SiO2", "50", "45"],
         ["Al2O3", "20", "25"],
         ["CaO", "30", "30"]],
        L("material_id", "composition", "composition", "composition"),
        L("other", "constituent", "constituent"))
  out.append(t)

  # Article 13: Kelvin temperatures and a ppm expansion coefficient.
  p = "S0921-5093(20)31111-0"
  t = T(p, 0, "Glass transition temperature and linear thermal expansion of the "
        "chalcogenide glasses.",
        [["Glass", "Tg (K)", "Thermal expansion coefficient (ppm/K)"],
         ["GeSe-1", "612", "14.2"],
         ["GeSe-2", "634", "13.5"],
         ["GeSe-3", "655", "12.9"]],
        L("other", "other", "other", "other"),
        L("material_id", "glass_transition_temperature",
          "thermal_expansion_coefficient"))
  t.column(1, "glass_transition_temperature", "K", [612, 634, 655])
  t.column(2, "thermal_expansion_coefficient", "1/K", [1.42e-05, 1.35e-05, 1.29e-05])
  out.append(t)

  # Article 14: partial composition (oxides do not sum to 100).
  p = "S0272-8842(22)02020-2"
  t = T(p, 0, "Doping levels (mol%) and density of the Er-doped glasses.",
        [["Sample", "Er2O3 (mol%)", "Yb2O3 (mol%)", "Density (g/cm3)"],
         ["E1", "0.5", "1.0", "5.31"],
         ["E2", "1.0", "2.0", "5.36"],
         ["E3", "1.5", "3.0", "5.42"]],
        L("other", "constituent", "constituent", "constituent"),
        L("material_id", "composition", "composition", "density"))
  t.column(3, "density", "g/cm3", [5.31, 5.36, 5.42])
  out.append(t)

  # Article 15: Shear and Poisson with Greek symbols.
  p = "S0022-3093(20)30222-2"
  t = T(p, 0, "Elastic moduli and Poisson's ratio from ultrasonic velocities.",
        [["Glass", "G (GPa)", "ν"],
         ["NP-1", "24.1", "0.281"],
         ["NP-2", "25.3", "0.276"],
         ["NP-3", "26.0", "0.270"]],
        L("other", "other", "other", "other"),
        L("material_id", "shear_modulus", "poisson_ratio"))
  t.column(1, "shear_modulus", "GPa", [24.1, 25.3, 26.0])
  t.column(2, "poisson_ratio", "", [0.281, 0.276, 0.270])
  out.append(t)

  # Article 16: crystallization and density for one article, linked by id
  # to a composition table in the same article.
  p = "S0040-6090(21)00555-5"
  t = T(p, 0, "Compositions of the lithium disilicate glasses (mol%).",
        [["Glass ID", "Li2O", "SiO2", "P2O5"],
         ["LD1", "33", "66", "1"],
         ["LD2", "33", "65", "2"]],
        L("other", "constituent", "constituent"),
        L("material_id", "composition", "composition", "composition"))
  out.append(t)
  t = T(p, 1, "Crystallization temperature and density of the glasses.",
        [["Glass ID", "Tx (°C)", "Density (g/cm3)"],
         ["LD1", "612", "2.352"],
         ["LD2", "618", "2.361"]],
        L("other", "other", "other"),
        L("material_id", "crystallization_temperature", "density"))
  t.column(1, "crystallization_temperature", "degC", [612, 618])
  t.column(2, "density", "g/cm3", [2.352, 2.361])
  out.append(t)

  assert len(out) == 20, len(out)
  return out


def reference_db(tables):
  """Reference records for every gold tuple, keyed by material id."""
  recs = {}
  for t in tables:
    for g in t.gold:
      rid = g["pii"] + "/" + g["material_id"]
      rec = recs.setdefault(rid, {"id": rid, "composition": {}, "properties": {}})
      rec["properties"].setdefault(g["property"],
                                   {"value": g["value"], "unit": g["unit"]})
  return [recs[k] for k in sorted(recs)]


# Training tables: the same layouts with other ids, values and wordings.
TRAIN_HEADINGS = [
    ("glass_transition_temperature",
     ["Tg (°C)", "Tg (K)", "Glass transition temperature (°C)", "T_g (°C)", "Tg onset (°C)",
      "Glass transition (K)", "Tg", "Tg (oC)"], (450, 800)),
    ("density",
     ["Density (g/cm3)", "Density (g cm−3)", "ρ (g/cm3)", "Density (kg/m3)", "Density",
      "ρ (g cm−3)", "Density (g/cc)"], (2.2, 5.5)),
    ("youngs_modulus",
     ["Young's modulus (GPa)", "E (GPa)", "Elastic modulus (GPa)", "Young modulus (GPa)"],
     (50, 110)),
    ("shear_modulus", ["Shear modulus (GPa)", "G (GPa)", "Rigidity modulus (GPa)"], (20, 45)),
    ("bulk_modulus", ["Bulk modulus (GPa)", "K (GPa)", "B (GPa)"], (30, 70)),
    ("poisson_ratio", ["Poisson's ratio", "ν", "Poisson ratio", "Poisson’s ratio"],
     (0.18, 0.32)),
    ("hardness",
     ["Vickers hardness (GPa)", "Hardness (HV)", "Knoop hardness (HK)", "Hv (GPa)",
      "Microhardness (GPa)", "Hardness (GPa)"], (4, 9)),
    ("fracture_toughness",
     ["Fracture toughness (MPa m^1/2)", "KIc (MPa m^0.5)", "Fracture toughness (MPa·m1/2)",
      "Indentation toughness (MPa m^1/2)"], (0.5, 1.2)),
    ("refractive_index", ["Refractive index", "nd", "n (632.8 nm)", "Refractive index (nD)"],
     (1.45, 2.1)),
    ("abbe_value", ["Abbe number", "Abbe value", "νd"], (15, 70)),
    ("softening_point",
     ["Softening point (°C)", "Softening temperature (K)", "Ts (°C)",
      "Dilatometric softening point (°C)"], (550, 900)),
    ("annealing_point", ["Annealing point (°C)", "Annealing temperature (°C)"], (400, 700)),
    ("crystallization_temperature",
     ["Tx (°C)", "Crystallization temperature (°C)", "Onset of crystallization (°C)",
      "Tx (K)"], (600, 1000)),
    ("liquidus_temperature", ["Liquidus temperature (°C)", "TL (°C)", "Liquidus (K)"],
     (900, 1400)),
    ("melting_temperature", ["Melting temperature (°C)", "Melting point (°C)"], (900, 1500)),
    ("thermal_expansion_coefficient",
     ["CTE (×10−7 K−1)", "Thermal expansion coefficient (ppm/K)", "α (10−6/°C)",
      "Coefficient of thermal expansion (×10−6 K−1)"], (5, 100)),
    ("electrical_conductivity",
     ["σ (S/cm)", "σ (S cm−1)", "Ionic conductivity (S/cm)", "DC conductivity (S/m)"],
     (1e-6, 1e-3)),
    ("activation_energy", ["Activation energy (eV)", "Ea (kJ/mol)", "Ea (eV)"], (0.2, 0.9)),
]
TRAIN_OTHER = [("Molar volume (cm3/mol)", (20, 40)), ("Thickness (mm)", (0.5, 3)),
               ("Optical basicity", (0.4, 0.7)), ("Oxygen packing density (g-atom/l)", (50, 80)),
               ("Power (W)", (50, 300)), ("Time (min)", (5, 120))]
TRAIN_GID = ["Glass", "Sample", "Code", "Glass ID", "Sample no.", "Label", "Glass code",
             "Sample ID", "Designation"]
TRAIN_OXIDES = ["SiO2", "B2O3", "Na2O", "CaO", "Al2O3", "MgO", "K2O", "Li2O", "P2O5", "ZnO",
                "TeO2", "GeO2", "BaO", "PbO", "Bi2O3", "TiO2", "ZrO2", "SrO", "La2O3",
                "Er2O3", "Yb2O3", "Fe2O3", "Nb2O5", "WO3"]
TRAIN_FAMILIES = ["silicate", "borate", "phosphate", "tellurite", "germanate",
                  "aluminosilicate", "fluoride", "borosilicate", "chalcogenide",
                  "bismuthate", "vanadate"]
TRAIN_PREFIX = ["A", "B", "S", "X", "GL", "T", "M", "R", "Q", "V", "W", "Z"]


def fmt(rng, v):
  if v < 0.01:
    return "%.2e" % v
  if v < 10:
    s = "%.3f" % v
  else:
    s = "%.1f" % v
  r = rng.random()
  if r < 0.1:
    return s + " ± " + ("%.2f" % (abs(v) * 0.02))
  return s


def caption_for(rng, family, names, comp_unit):
  parts = [n.split(" (")[0] for n in names]
  kind = rng.random()
  if comp_unit and not names:
    return rng.choice(["Nominal compositions of the {} glasses ({}).",
                       "Chemical composition of the {} glasses in {}.",
                       "Batch compositions ({1}) of the {0} series."]).format(family, comp_unit)
  if kind < 0.5 and parts:
    return "{} of the {} glasses.".format(" and ".join(parts[:2]).capitalize(), family)
  if kind < 0.8:
    return rng.choice(["Properties of the {} glasses.", "Measured data for the {} series.",
                       "Physical and thermal properties of the {} glasses.",
                       "Results for the {} samples."]).format(family)
  return "Table {}. {} glasses.".format(rng.randint(1, 9), family.capitalize())


def train_tables(n, seed):
  rng = random.Random(seed)
  out = []
  for i in range(n):
    pii = "TRAIN-%04d" % i
    family = rng.choice(TRAIN_FAMILIES)
    n_mat = rng.randint(2, 6)
    prefix = rng.choice(TRAIN_PREFIX) + rng.choice(["", "-", ""])
    start = rng.randint(0, 20)
    gids = ["%s%d" % (prefix, start + k) for k in range(n_mat)]
    layout = rng.random()
    has_comp = layout < 0.45
    n_props = 0 if (has_comp and rng.random() < 0.4) else rng.randint(1, 4)
    props = rng.sample(TRAIN_HEADINGS, n_props)
    oxides = rng.sample(TRAIN_OXIDES, rng.randint(2, 4)) if has_comp else []
    comp_unit = rng.choice(["mol%", "wt%", "mol.%"])
    unit_in_header = rng.random() < 0.5
    others = rng.sample(TRAIN_OTHER, 1) if rng.random() < 0.25 else []

    cols = [("gid", rng.choice(TRAIN_GID), CODES["material_id"], None)]
    for ox in oxides:
      name = ox + (" (" + comp_unit + ")" if unit_in_header else "")
      cols.append(("ox", name, CODES["composition"], None))
    names = []
    for key, variants, span in props:
      name = rng.choice(variants)
      names.append(name)
      cols.append(("prop", name, CODES[key], span))
    for name, span in others:
      cols.append(("other", name, 0, span))
    body = [c for c in cols[1:]]
    rng.shuffle(body)
    cols = cols[:1] + body

    rows = [[c[1] for c in cols]]
    for g in gids:
      fr = [rng.random() + 0.2 for _ in oxides]
      s = sum(fr)
      vals = [round(100 * f / s, 1) for f in fr]
      if vals:
        vals[-1] = round(100 - sum(vals[:-1]), 1)
      k = 0
      row = [g]
      for kind, _, _, span in cols[1:]:
        if kind == "ox":
          row.append("%.1f" % vals[k])
          k += 1
        else:
          row.append(fmt(rng, rng.uniform(*span)))
      rows.append(row)
    caption = caption_for(rng, family, names, comp_unit if not unit_in_header else "")
    col_labels = [c[2] for c in cols]
    row_labels = [0] + [CODES["constituent"] if oxides else 0] * n_mat
    t = {"pii": pii, "table_index": rng.randint(0, 4), "caption": caption}
    if rng.random() < 0.3:
      t["cells"] = [list(r) for r in zip(*rows)]
      t["row_labels"] = col_labels
      t["col_labels"] = row_labels
    else:
      t["cells"] = rows
      t["row_labels"] = row_labels
      t["col_labels"] = col_labels
    out.append(t)
  return out


def write_jsonl(name, records):
  with open(os.path.join(HERE, name), "w", encoding="utf-8") as f:
    for r in records:
      f.write(json.dumps(r, ensure_ascii=False) + "\n")


def main():
  tables = corpus()
  write_jsonl("tables.jsonl", [t.record(False) for t in tables])
  write_jsonl("tables_labeled.jsonl", [t.record(True) for t in tables])
  write_jsonl("gold_tuples.jsonl", [g for t in tables for g in t.gold])
  write_jsonl("reference_db.jsonl", reference_db(tables))
  write_jsonl("train.jsonl", train_tables(600, 2026))


if __name__ == "__main__":
  main()
