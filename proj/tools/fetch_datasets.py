#!/usr/bin/env python3
# Copyright 2026 The treeclust Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Materializes the Titanic and Adult CSVs used by the acceptance suite.

Neither dataset is redistributed with this repository. Both are pulled from
Python wheels that bundle them:

  * Adult (UCI "Census Income", train split, 32561 rows) from `responsibly`.
  * Titanic (Kaggle train split, 891 rows) from `explainerdashboard`, whose
    one-hot columns are folded back into Sex / Deck / Embarked.

Usage: fetch_datasets.py [OUT_DIR]   (default: <repo>/data)
"""

import csv
import io
import pathlib
import subprocess
import sys
import tempfile
import zipfile

ADULT_COLUMNS = [
    "age", "workclass", "fnlwgt", "education", "education-num",
    "marital-status", "occupation", "relationship", "race", "sex",
    "capital-gain", "capital-loss", "hours-per-week", "native-country",
    "income",
]


def download_wheel(package, version, workdir):
    subprocess.run(
        [sys.executable, "-m", "pip", "download", "--no-deps", "--quiet",
         "-d", str(workdir), f"{package}=={version}"],
        check=True)
    wheels = sorted(workdir.glob(f"{package.replace('-', '_')}-{version}-*.whl"))
    if not wheels:
        raise RuntimeError(f"wheel for {package}=={version} not found")
    return zipfile.ZipFile(wheels[0])


def write_adult(wheel, out):
    text = wheel.read("responsibly/dataset/adult/adult.data").decode()
    rows = [[c.strip() for c in line.split(",")]
            for line in text.splitlines() if line.strip()]
    with open(out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(ADULT_COLUMNS)
        w.writerows(rows)
    return len(rows)


def pick(row, prefix):
    for key, value in row.items():
        if key.startswith(prefix) and value == "1":
            return key[len(prefix):]
    return ""


def write_titanic(wheel, out):
    rows = []
    for part in ("titanic_train.csv", "titanic_test.csv"):
        text = wheel.read(f"explainerdashboard/datasets/{part}").decode()
        rows.extend(csv.DictReader(io.StringIO(text)))
    # The bundled copy is shuffled across its two splits; name order restores
    # a stable row order independent of the split.
    rows.sort(key=lambda r: r["Name"])
    with open(out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["Name", "Pclass", "Sex", "Age", "SibSp", "Parch", "Fare",
                    "Deck", "Embarked", "Survived"])
        for r in rows:
            sex = pick(r, "Sex_")
            deck = pick(r, "Deck_")
            age = r["Age"]
            if age in ("", "-999", "-999.0", "nan"):
                age = ""
            w.writerow([r["Name"], r["PassengerClass"],
                        "" if sex == "nan" else sex, age,
                        r["No_of_siblings_plus_spouses_on_board"],
                        r["No_of_parents_plus_children_on_board"], r["Fare"],
                        "" if deck == "Unkown" else deck,
                        "" if pick(r, "Embarked_") == "Unknown"
                        else pick(r, "Embarked_"),
                        r["Survival"]])
    return len(rows)


def main():
    root = pathlib.Path(__file__).resolve().parent.parent
    out_dir = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else root / "data"
    out_dir.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        tmp = pathlib.Path(tmp)
        n = write_adult(download_wheel("responsibly", "0.1.2", tmp),
                        out_dir / "adult.csv")
        print(f"adult.csv: {n} rows")
        n = write_titanic(download_wheel("explainerdashboard", "0.5.8", tmp),
                          out_dir / "titanic.csv")
        print(f"titanic.csv: {n} rows")


if __name__ == "__main__":
    main()
