"""Check every shipped rank-3 identity row and print the full 64-element table."""
from palwidth.width import build_length_table, check_row, load_section4_rows, section4_table
from palwidth.words import GroupSpec


def main():
    table = build_length_table(GroupSpec(3, 2, True))
    print("row     identity  bound  exact  factors")
    for row in load_section4_rows():
        r = check_row(row, table)
        status = {True: "ok", False: "WRONG", None: "unparsed"}[r["identity_holds"]]
        extra = r["factors"] if r["parsed"] else r["error"]
        if r["identity_holds"] is False:
            extra += f"   (product is {r['product']})"
        print(f"{r['code']}  {status:8s}  {r['bound']:5d}  {r['length']:5d}  {extra}")
    print()
    for rec in section4_table(table):
        print(f"{rec['bits']}  {rec['length']}  {rec['element']:24s} {rec['witness']}")


if __name__ == "__main__":
    main()
