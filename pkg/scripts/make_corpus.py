"""Write the shipped corpus to corpus/ as .fin and .inf files."""
import argparse
from pathlib import Path

from ordanalysis.corpus import CORPUS, INF_CORPUS
from ordanalysis.finitary import proof_to_text
from ordanalysis.infinitary.io import deriv_to_text


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dir", default=str(Path(__file__).resolve().parent.parent / "corpus"))
    out = Path(ap.parse_args().dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, mk in CORPUS.items():
        (out / f"{name}.fin").write_text(proof_to_text(mk()) + "\n")
    for name, mk in INF_CORPUS.items():
        (out / f"{name}.inf").write_text(deriv_to_text(mk()) + "\n")
    print(f"wrote {len(CORPUS) + len(INF_CORPUS)} files to {out}")


if __name__ == "__main__":
    main()
