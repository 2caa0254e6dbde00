#!/usr/bin/env python3
"""Writes the mini-wiki raw inputs (raw/*.jsonl, raw/*.csv, raw/projects.txt).

Three projects, twelve editors, forty signed posts on user talk pages.
The interaction counts each page is meant to produce are listed in
expected_edges.tsv; oracle.py derives the golden outputs from that file.
"""
import csv
import json
import pathlib

HERE = pathlib.Path(__file__).resolve().parent
RAW = HERE / "raw"


def sig(user, when):
    return f"[[User:{user}|{user}]] ([[User talk:{user}|talk]]) {when} (UTC)"


def sig_talk_only(user, when):
    return f"[[User talk:{user}|{user}]] {when} (UTC)"


NEWSLETTER_BOT = "MediaWiki message delivery"


def newsletter(issue, when):
    return (
        f"== The Weather Vane, issue {issue} ==\n"
        "<div style=\"border: 1px solid #aaa; padding: 4px;\">\n"
        "'''Contest results''' are in. Thanks to everyone who reviewed an article this month.\n"
        "</div>\n"
        f"<!-- Message sent by User:Erin@enwiki using the list at https://en.wikipedia.org/w/index.php?title=Wikipedia:WikiProject_Tropical_cyclones/Newsletter/List&oldid={1000 + issue} -->\n"
        f"{sig(NEWSLETTER_BOT, when)}\n"
    )


PROJECT_PAGES = {
    "Wikipedia:WikiProject Tropical cyclones": (
        "{{WikiProject banner shell}}\n"
        "'''WikiProject Tropical cyclones''' covers storms, seasons and meteorologists.\n\n"
        "== Scope ==\nArticles about tropical and subtropical cyclones.\n"
    ),
    "Wikipedia:WikiProject Tropical cyclones/Members": (
        "== Active members ==\n"
        f"# {sig('Alice', '10:02, 3 January 2020')}\n"
        f"# {sig('Bob', '11:15, 3 January 2020')} - mostly Atlantic seasons\n"
        f"# [[User:Carol|Carol]] 09:40, 5 January 2020 (UTC)\n"
        f"# {sig('Dave', '18:03, 6 January 2020')}\n"
        f"# {sig_talk_only('Erin', '07:30, 8 January 2020')}\n"
        f"# [[User:Frank|Frank]] ([[Special:Contributions/Frank|contribs]]) 21:12, 9 January 2020 (UTC)\n"
        f"# {sig('Grace', '13:55, 12 January 2020')}\n"
    ),
    "Wikipedia:WikiProject Tropical cyclones/Newsletter": newsletter(3, "12:00, 1 February 2020"),
    "Wikipedia:WikiProject Tropical cyclones/Talk": (
        "== Is this the right place? ==\n"
        f"I have a question about hurricane names. {sig('Oscar', '16:20, 2 February 2020')}\n"
        f":Try the main talk page. {sig('Alice', '16:45, 2 February 2020')}\n"
    ),
    "Wikipedia:WikiProject Birds": (
        "'''WikiProject Birds''' is a collaboration on articles about birds.\n"
        "=== Participants ===\n"
        f"* {sig('Grace', '08:00, 4 January 2020')}\n"
        f"* {sig('Heidi', '08:30, 4 January 2020')}\n"
        f"* {sig('Ivan', '19:45, 7 January 2020')}\n"
        f"* [[User:Judy|Judy]] <small>([[User talk:Judy|talk]])</small> 22:10, 7 January 2020 (UTC)\n"
        f"* {sig('Mallory', '06:05, 10 January 2020')}\n"
        f"* {sig('Alice', '14:14, 11 January 2020')}\n"
    ),
    "Wikipedia:WikiProject Chess/Participants": (
        "Add yourself below.\n"
        f"* {sig('Niaj', '17:00, 2 January 2020')}\n"
        f"* {sig('Bob', '17:30, 2 January 2020')}\n"
        f"* {sig('Carol', '09:05, 6 January 2020')}\n"
        f"* {sig('Mallory', '10:50, 10 January 2020')}\n"
        f"* [[User:Ivan|Ivan]] 20:00, 13 January 2020 (UTC)\n"
    ),
}

TALK_PAGES = {
    "Alice": (
        "{{User talk header}}\n"
        "== Hurricane Ida FAC ==\n"
        f"Would you take a look at the FAC? {sig('Bob', '09:12, 2 March 2020')}\n"
        f":Sure, this weekend. {sig('Alice', '10:01, 2 March 2020')}\n"
        f"::Thanks! I fixed the lead already. {sig('Bob', '10:30, 2 March 2020')}\n"
        "== Track map ==\n"
        f"The map for Hurricane Maria has the wrong colour key. {sig('Erin', '14:20, 5 March 2020')}\n"
        "== Heron photos ==\n"
        f"I uploaded the grey heron photos you asked about. {sig('Judy', '08:45, 9 March 2020')}\n"
        "=== Licensing ===\n"
        f"*One of them needs a licence tag. {sig('Heidi', '09:10, 9 March 2020')}\n"
    ),
    "Bob": (
        "== 2005 season ==\n"
        f"I split the season article into months. {sig('Alice', '11:00, 3 March 2020')}\n"
        f":Looks good. {sig('Bob', '11:20, 3 March 2020')}\n"
        f"::One more question about the tables. {sig('Alice', '11:45, 3 March 2020')}\n"
        "== Peer review ==\n"
        f"Peer review is open for Cyclone Tracy. {sig('Alice', '15:00, 6 March 2020')}\n"
        "== Sicilian defence ==\n"
        f"Do you have a source for the Najdorf statistics? {sig('Niaj', '12:12, 7 March 2020')}\n"
        f":Never mind, found it. {sig('Niaj', '12:40, 7 March 2020')}\n"
        "== Infobox ==\n"
        f"Infobox parameters changed; see the template talk page. {sig('Carol', '19:05, 8 March 2020')}\n"
        + newsletter(4, "12:00, 1 April 2020")
    ),
    "Carol": (
        "== Reliable sources ==\n"
        f"Is the weather blog reliable? {sig('Bob', '08:00, 4 March 2020')}\n"
        "== Rainfall totals ==\n"
        f"I added rainfall totals to the table. {sig('Dave', '16:10, 4 March 2020')}\n"
        f"::Another batch is done. {sig('Dave', '17:30, 4 March 2020')}\n"
        "== Endgame tablebases ==\n"
        f"The tablebase article needs a diagram. {sig('Niaj', '13:00, 10 March 2020')}\n"
        "== Opening names ==\n"
        f"Is it the King's Gambit or Kings Gambit? {sig('Ivan', '21:21, 11 March 2020')}\n"
    ),
    "Dave": (
        "== Rainfall ==\n"
        f"Thanks for the totals. {sig('Carol', '09:00, 5 March 2020')}\n"
        "This comment was never signed and should not count.\n"
        "== Season summary ==\n"
        f":The summary is too long. {sig('Erin', '10:10, 12 March 2020')}\n"
        "== Hello ==\n"
        f"Hi, I am new here. {sig('Oscar', '18:18, 13 March 2020')}\n"
    ),
    "Erin": (
        "== Newsletter list ==\n"
        f"Please add me to the newsletter list. {sig('Dave', '07:07, 14 March 2020')}\n"
        "== Map colours ==\n"
        f"The new colours look much better. {sig('Alice', '15:15, 15 March 2020')}\n"
    ),
    "Frank": (
        "== A barnstar for you! ==\n"
        "{| style=\"border: 1px solid gray; background-color: #fdffe7;\"\n"
        "|rowspan=\"2\" valign=\"middle\" | [[File:Original Barnstar Hires.png|100px]]\n"
        "|rowspan=\"2\" |\n"
        "|style=\"font-size: x-large; padding: 3px 3px 0 3px; height: 1.5em;\" | '''The Original Barnstar'''\n"
        "|-\n"
        f"|style=\"vertical-align: middle; padding: 3px;\" | For your work on storm surge articles. {sig('Alice', '09:15, 4 April 2020')}\n"
        "|}\n"
    ),
    "Grace": (
        "== Bird of the month ==\n"
        f"Shall we pick the kingfisher? {sig('Heidi', '10:00, 16 March 2020')}\n"
        f"::Or the hoopoe. {sig('Heidi', '10:05, 17 March 2020')}\n"
    ),
    "Heidi": (
        "== Kingfisher ==\n"
        f"Kingfisher it is. {sig('Grace', '11:00, 16 March 2020')}\n"
        f":Hoopoe next month then. {sig('Grace', '11:30, 17 March 2020')}\n"
        "== Taxonomy ==\n"
        f"The IOC list was updated. {sig('Ivan', '12:00, 18 March 2020')}\n"
        "== Photos ==\n"
        f"Thanks for the licence fix. {sig('Judy', '13:00, 19 March 2020')}\n"
        "== Storm birds ==\n"
        f"Do seabirds get blown inland by hurricanes? {sig('Dave', '14:00, 20 March 2020')}\n"
    ),
    "Ivan": (
        "== Checklist ==\n"
        f"The county checklist is ready. {sig('Judy', '08:20, 21 March 2020')}\n"
        "=== Additions ===\n"
        f"::I found two more records. {sig('Judy', '09:40, 22 March 2020')}\n"
    ),
    "Judy": (
        "== Checklist reply ==\n"
        f"Great work on the checklist. {sig('Ivan', '10:10, 23 March 2020')}\n"
        + newsletter(5, "12:00, 1 May 2020")
        + "== Question ==\n"
        f"How do I upload a photo? {sig('Oscar', '11:11, 24 March 2020')}\n"
    ),
    "Mallory": (
        newsletter(6, "12:00, 1 June 2020")
        + "== Note to self ==\n"
        f"Remember to finish the owl article. {sig('Mallory', '07:45, 25 March 2020')}\n"
    ),
    "Niaj": (
        "== Najdorf ==\n"
        f"Here is the source you wanted. {sig('Bob', '16:16, 26 March 2020')}\n"
    ),
}

# project as filed, article, grade
ASSESSMENTS = (
    [("Tropical cyclones", t, "FA") for t in ("Hurricane Ida", "Cyclone Tracy", "Typhoon Tip")]
    + [("Tropical cyclones", "Hurricane Maria", "GA")]
    + [("Tropical cyclones", "Hurricane Ida", "GA")]  # duplicate, lower grade
    + [("Tropical cyclones", f"Tropical Storm {n}", c) for n, c in
       (("Allison", "B"), ("Bill", "C"), ("Claudette", "Start"), ("Danny", "Stub"), ("Erika", "C"),
        ("Fabian", "Start"), ("Grace", "B"), ("Henri", "Stub"), ("Isabel", "C"), ("Juan", "Start"))]
    + [("Tropical cyclones", "Category:Atlantic hurricanes", "NA")]
    + [("Tropical cyclones", "Dvorak technique", "B")]
    + [("Tropical storms", "Storm surge", "C")]  # filed under an alias
    + [("Birds", "Grey heron", "FA"), ("Birds", "Common kingfisher", "GA")]
    + [("Birds", t, c) for t, c in
       (("Hoopoe", "B"), ("Barn owl", "C"), ("Great tit", "Start"), ("Mute swan", "C"), ("Robin", "Stub"),
        ("Wren", "Start"), ("Jackdaw", "B"))]
    + [("Birds", "Talk:Barn owl", "C")]
    + [("Chess", "Sicilian Defence", "GA")]
    + [("Chess", t, c) for t, c in (("Endgame tablebase", "B"), ("King's Gambit", "C"), ("Najdorf Variation", "Start"))]
)


def main():
    RAW.mkdir(exist_ok=True)
    with open(RAW / "project_pages.jsonl", "w", newline="\n") as f:
        for title in sorted(PROJECT_PAGES):
            f.write(json.dumps({"title": title, "wikitext": PROJECT_PAGES[title]},
                               ensure_ascii=False, separators=(",", ":")) + "\n")
    with open(RAW / "user_talk_pages.jsonl", "w", newline="\n") as f:
        for owner in sorted(TALK_PAGES):
            f.write(json.dumps({"title": f"User talk:{owner}", "wikitext": TALK_PAGES[owner]},
                               ensure_ascii=False, separators=(",", ":")) + "\n")
    with open(RAW / "assessments.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["project", "article", "grade"])
        for row in sorted(ASSESSMENTS):
            w.writerow(row)
    (RAW / "projects.txt").write_text("Birds\nChess\nTropical cyclones\n")


if __name__ == "__main__":
    main()
