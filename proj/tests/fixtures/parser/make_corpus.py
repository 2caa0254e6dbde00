#!/usr/bin/env python3
"""Annotated user-talk-page corpus for the parser golden test.

Each case is a page plus the posts a careful human reader extracts from it:
(thread heading, author, timestamp, depth, mass message). Writes pages.jsonl
and expected.jsonl (the second in the posts.jsonl schema, in page order).
"""
import json
import pathlib

HERE = pathlib.Path(__file__).resolve().parent


def sig(user, when, link_name=None):
    name = link_name or user
    return f"[[User:{name}|{user}]] ([[User talk:{name}|talk]]) {when} (UTC)"


CASES = []


def case(title, wikitext, posts):
    CASES.append((title, wikitext, posts))


# 1. Plain exchange under one heading.
case("User talk:Alice",
     "== Hello ==\n"
     f"Welcome back! {sig('Bob', '14:02, 11 February 2021')}\n"
     f":Thanks! {sig('Alice', '14:10, 11 February 2021')}\n",
     [("Hello", "Bob", "2021-02-11T14:02:00Z", 0, False),
      ("Hello", "Alice", "2021-02-11T14:10:00Z", 1, False)])

# 2. Unsigned paragraph between signed posts is dropped.
case("User talk:Carol",
     "== Sources ==\n"
     f"Which source is that? {sig('Dave', '08:00, 2 March 2020')}\n"
     "I think it was the newspaper.\n"
     f"::It was the newspaper. {sig('Erin', '09:30, 2 March 2020')}\n",
     [("Sources", "Dave", "2020-03-02T08:00:00Z", 0, False),
      ("Sources", "Erin", "2020-03-02T09:30:00Z", 2, False)])

# 3. No headings at all: one thread with an empty heading.
case("User talk:Frank",
     f"Just saying hi. {sig('Grace', '12:00, 5 May 2019')}\n",
     [("", "Grace", "2019-05-05T12:00:00Z", 0, False)])

# 4. Level-3 subsection stays inside its level-2 thread.
case("User talk:Heidi",
     "== Review ==\n"
     f"Can you review the article? {sig('Ivan', '10:00, 1 June 2018')}\n"
     "=== Follow-up ===\n"
     f":I left comments. {sig('Heidi', '11:00, 1 June 2018')}\n"
     "== Other ==\n"
     f"Unrelated note. {sig('Ivan', '12:00, 1 June 2018')}\n",
     [("Review", "Ivan", "2018-06-01T10:00:00Z", 0, False),
      ("Review", "Heidi", "2018-06-01T11:00:00Z", 1, False),
      ("Other", "Ivan", "2018-06-01T12:00:00Z", 0, False)])

# 5. Newsletter delivered by the delivery bot.
case("User talk:Judy",
     "== The Signpost: 1 March 2021 ==\n"
     "<div class=\"signpost\">News and notes, in the media, discussion report.</div>\n"
     "<!-- Message sent by User:Newsroom@enwiki using the list at https://example.org/list -->\n"
     f"{sig('MediaWiki message delivery', '23:59, 1 March 2021')}\n",
     [("The Signpost: 1 March 2021", "MediaWiki message delivery", "2021-03-01T23:59:00Z", 0, True)])

# 6. Delivery marker present, signed by a person: still a mass message.
case("User talk:Mallory",
     "== Drive invitation ==\n"
     "You are invited to the backlog drive.\n"
     "<!-- Message sent by User:Niaj@enwiki using the list at https://example.org/drive -->\n"
     f"{sig('Niaj', '07:15, 3 April 2020')}\n",
     [("Drive invitation", "Niaj", "2020-04-03T07:15:00Z", 0, True)])

# 7. Barnstar in a table, signed by a person: kept, not mass.
case("User talk:Oscar",
     "== A barnstar for you! ==\n"
     "{| style=\"border: 1px solid gray;\"\n"
     "|rowspan=\"2\" | [[File:Original Barnstar Hires.png|100px]]\n"
     "|style=\"font-size: x-large;\" | '''The Original Barnstar'''\n"
     "|-\n"
     f"| For all the copyediting. {sig('Peggy', '16:45, 9 September 2017')}\n"
     "|}\n",
     [("A barnstar for you!", "Peggy", "2017-09-09T16:45:00Z", 0, False)])

# 8. Substituted welcome template.
case("User talk:Newbie",
     "== Welcome! ==\n"
     "<!-- Template:Welcome -->\n"
     "'''Welcome to Wikipedia!''' Here are some pages you might find helpful.\n"
     "* [[Wikipedia:Five pillars|The five pillars]]\n"
     f"Happy editing! {sig('Trent', '05:05, 5 May 2015')}\n",
     [("Welcome!", "Trent", "2015-05-05T05:05:00Z", 0, False)])

# 9. Ping before the signature: the last user link is the author.
case("User talk:Victor",
     "== Merge ==\n"
     f"[[User:Walter|Walter]], what do you think about the merge? {sig('Alice', '10:00, 7 July 2016')}\n",
     [("Merge", "Alice", "2016-07-07T10:00:00Z", 0, False)])

# 10. Lower-case namespace and underscores in the user name.
case("User talk:Bob smith",
     "== Note ==\n"
     "[[user:bob_smith|b]] 09:30, 1 May 2019 (UTC)\n",
     [("Note", "Bob smith", "2019-05-01T09:30:00Z", 0, False)])

# 11. Only a user talk link in the signature.
case("User talk:Carol",
     "== Ping ==\n"
     "See my reply. [[User talk:Dave|Dave]] 18:20, 12 December 2012 (UTC)\n",
     [("Ping", "Dave", "2012-12-12T18:20:00Z", 0, False)])

# 12. Link to a user subpage and a talk-page anchor.
case("User talk:Erin",
     "== Drafts ==\n"
     "See [[User:Frank/Drafts/Storm|my draft]]. [[User:Frank/sig|Frank]] ([[User talk:Frank#top|talk]]) 01:01, 1 January 2011 (UTC)\n",
     [("Drafts", "Frank", "2011-01-01T01:01:00Z", 0, False)])

# 13. Mixed indentation markers.
case("User talk:Grace",
     "== Votes ==\n"
     f"*Support. {sig('Heidi', '10:00, 2 February 2014')}\n"
     f"*:Why? {sig('Ivan', '10:05, 2 February 2014')}\n"
     f"*::Because. {sig('Heidi', '10:10, 2 February 2014')}\n"
     f":*Fair. {sig('Ivan', '10:15, 2 February 2014')}\n",
     [("Votes", "Heidi", "2014-02-02T10:00:00Z", 1, False),
      ("Votes", "Ivan", "2014-02-02T10:05:00Z", 2, False),
      ("Votes", "Heidi", "2014-02-02T10:10:00Z", 3, False),
      ("Votes", "Ivan", "2014-02-02T10:15:00Z", 2, False)])

# 14. Single-digit day, end-of-year time.
case("User talk:Judy",
     "== New year ==\n"
     f"Happy new year! {sig('Mallory', '23:59, 31 December 2009')}\n"
     f":Same to you. {sig('Judy', '00:01, 1 January 2010')}\n",
     [("New year", "Mallory", "2009-12-31T23:59:00Z", 0, False),
      ("New year", "Judy", "2010-01-01T00:01:00Z", 1, False)])

# 15. Unsigned-comment note with a timestamp but no user link; then an IP signature.
case("User talk:Niaj",
     "== Question ==\n"
     "Why was my edit reverted? —Preceding unsigned comment added by 192.0.2.44 12:00, 4 April 2013 (UTC)\n"
     ":Because it had no source. "
     f"{sig('Niaj', '12:30, 4 April 2013')}\n"
     "::OK. [[Special:Contributions/192.0.2.44|192.0.2.44]] ([[User talk:192.0.2.44|talk]]) 12:45, 4 April 2013 (UTC)\n",
     [("Question", "Niaj", "2013-04-04T12:30:00Z", 1, False),
      ("Question", "192.0.2.44", "2013-04-04T12:45:00Z", 2, False)])

# 16. Heading with extra spaces.
case("User talk:Oscar",
     "==   Spaced heading   ==\n"
     f"Hi. {sig('Peggy', '06:06, 6 June 2006')}\n",
     [("Spaced heading", "Peggy", "2006-06-06T06:06:00Z", 0, False)])

# 17. Two signatures on one line give two posts.
case("User talk:Rupert",
     "== Consensus ==\n"
     f"Agreed. {sig('Sybil', '10:00, 3 March 2015')} Me too. {sig('Trent', '10:02, 3 March 2015')}\n",
     [("Consensus", "Sybil", "2015-03-03T10:00:00Z", 0, False),
      ("Consensus", "Trent", "2015-03-03T10:02:00Z", 0, False)])

# 18. Styled signature markup.
case("User talk:Victor",
     "== Styled ==\n"
     "Nice work. <span style=\"color:#008\">[[User:Zed|<b>Zed</b>]]</span> "
     "<sup>[[User talk:Zed|(talk)]]</sup> 14:02, 11 February 2021 (UTC)\n",
     [("Styled", "Zed", "2021-02-11T14:02:00Z", 0, False)])

# 19. Multi-paragraph post with one signature; depth from the first line.
case("User talk:Walter",
     "== Long comment ==\n"
     ":First paragraph of a long comment.\n"
     ":\n"
     ":Second paragraph, still the same comment. "
     f"{sig('Alice', '20:20, 20 October 2020')}\n",
     [("Long comment", "Alice", "2020-10-20T20:20:00Z", 1, False)])

# 20. Implausible year: parsed and kept.
case("User talk:Bob",
     "== Old ==\n"
     f"Time traveller. {sig('Carol', '10:00, 1 January 1999')}\n",
     [("Old", "Carol", "1999-01-01T10:00:00Z", 0, False)])

# 21. Archive subpage: owner comes from the base page.
case("User talk:Dave/Archive 3",
     "== Archived ==\n"
     f"Old thread. {sig('Erin', '11:11, 11 November 2011')}\n",
     [("Archived", "Erin", "2011-11-11T11:11:00Z", 0, False)])

# 22. Title with underscores.
case("User talk:Frank_the_tank",
     "== Hi ==\n"
     f"Hello. {sig('Grace', '09:09, 9 September 2009')}\n",
     [("Hi", "Grace", "2009-09-09T09:09:00Z", 0, False)])

# 23. Talkback template, signed.
case("User talk:Heidi",
     "== Talkback ==\n"
     "{{Talkback|Ivan|Storm names}}\n"
     f"{sig('Ivan', '13:13, 13 March 2013')}\n",
     [("Talkback", "Ivan", "2013-03-13T13:13:00Z", 0, False)])

# 24. Page without any signature.
case("User talk:Judy",
     "{{User talk header}}\n"
     "== Notes ==\n"
     "Just some notes to self, never signed.\n",
     [])

# 25. Empty page.
case("User talk:Mallory", "", [])

# 26. Heading only.
case("User talk:Niaj", "== Empty thread ==\n", [])

# 27. Ordinary thread and a newsletter on one page.
case("User talk:Oscar",
     "== Question ==\n"
     f"Do you have a minute? {sig('Peggy', '08:08, 8 August 2008')}\n"
     "== Project newsletter ==\n"
     "Issue 12 is out.\n"
     f"{sig('MediaWiki message delivery', '12:00, 9 August 2008')}\n"
     "== Reply ==\n"
     f"Yes, go ahead. {sig('Oscar', '09:00, 10 August 2008')}\n",
     [("Question", "Peggy", "2008-08-08T08:08:00Z", 0, False),
      ("Project newsletter", "MediaWiki message delivery", "2008-08-09T12:00:00Z", 0, True),
      ("Reply", "Oscar", "2008-08-10T09:00:00Z", 0, False)])

# 28. Owner replies inside a newsletter thread: the whole thread is mass.
case("User talk:Rupert",
     "== Newsletter ==\n"
     "<!-- Message sent by User:Sybil@enwiki using the list at https://example.org/n -->\n"
     f"{sig('MediaWiki message delivery', '12:00, 2 February 2022')}\n"
     f":Please unsubscribe me. {sig('Rupert', '13:00, 2 February 2022')}\n",
     [("Newsletter", "MediaWiki message delivery", "2022-02-02T12:00:00Z", 0, True),
      ("Newsletter", "Rupert", "2022-02-02T13:00:00Z", 1, True)])

# 29. Non-ASCII user names; first letter uppercased.
case("User talk:Édith",
     "== Bonjour ==\n"
     "Salut! [[User:élodie|élodie]] ([[User talk:élodie|talk]]) 10:10, 10 October 2010 (UTC)\n"
     f":Merci! {sig('Édith', '10:20, 10 October 2010')}\n",
     [("Bonjour", "Élodie", "2010-10-10T10:10:00Z", 0, False),
      ("Bonjour", "Édith", "2010-10-10T10:20:00Z", 1, False)])

# 30. Heading containing a link.
case("User talk:Sybil",
     "== [[Hurricane Ida]] ==\n"
     f"Is the lead too long? {sig('Trent', '15:15, 15 September 2021')}\n",
     [("[[Hurricane Ida]]", "Trent", "2021-09-15T15:15:00Z", 0, False)])

# 31. Outdent template before a reply.
case("User talk:Trent",
     "== Dispute ==\n"
     f":::::Deep reply. {sig('Victor', '07:00, 7 July 2017')}\n"
     "{{outdent|:::::}}\n"
     f"Back to the left margin. {sig('Walter', '07:30, 7 July 2017')}\n",
     [("Dispute", "Victor", "2017-07-07T07:00:00Z", 5, False),
      ("Dispute", "Walter", "2017-07-07T07:30:00Z", 0, False)])

# 32. Text after the signature on the same line starts the next segment.
case("User talk:Victor",
     "== Edit conflict ==\n"
     f"First reply. {sig('Alice', '10:00, 4 April 2004')} (edit conflict) Second thought. {sig('Bob', '10:01, 4 April 2004')}\n",
     [("Edit conflict", "Alice", "2004-04-04T10:00:00Z", 0, False),
      ("Edit conflict", "Bob", "2004-04-04T10:01:00Z", 0, False)])

# 33. Preamble before the first heading, then threads.
case("User talk:Walter",
     f"Leftover comment at the top. {sig('Carol', '03:03, 3 March 2003')}\n"
     "== First ==\n"
     f"Hello. {sig('Dave', '04:04, 4 April 2004')}\n",
     [("", "Carol", "2003-03-03T03:03:00Z", 0, False),
      ("First", "Dave", "2004-04-04T04:04:00Z", 0, False)])

# 34. Malformed timestamp (bad month) is not a signature.
case("User talk:Alice",
     "== Typos ==\n"
     "Broken. [[User:Bob|Bob]] 10:00, 1 Febtober 2020 (UTC)\n"
     f"Proper. {sig('Carol', '10:05, 1 February 2020')}\n",
     # The broken line has no valid timestamp, so it is part of Carol's segment.
     [("Typos", "Carol", "2020-02-01T10:05:00Z", 0, False)])

# 35. User link on the previous line does not sign a bare timestamp.
case("User talk:Dave",
     "== Split ==\n"
     "Suggested by [[User:Erin|Erin]].\n"
     "Timestamp on its own line 11:00, 2 May 2012 (UTC)\n"
     f"Real post. {sig('Frank', '11:30, 2 May 2012')}\n",
     [("Split", "Frank", "2012-05-02T11:30:00Z", 0, False)])

# 36. Level-1 heading does not start a thread; level 4 and 5 stay inside too.
case("User talk:Grace",
     "== Main ==\n"
     f"Start. {sig('Heidi', '01:00, 1 March 2001')}\n"
     "==== Deep ====\n"
     f"Deeper. {sig('Ivan', '02:00, 1 March 2001')}\n"
     "= Top level =\n"
     f"Top. {sig('Judy', '03:00, 1 March 2001')}\n",
     [("Main", "Heidi", "2001-03-01T01:00:00Z", 0, False),
      ("Main", "Ivan", "2001-03-01T02:00:00Z", 0, False),
      ("Main", "Judy", "2001-03-01T03:00:00Z", 0, False)])


def owner_of(title):
    rest = title.split(":", 1)[1].split("/", 1)[0]
    return " ".join(rest.replace("_", " ").split())


def main():
    with open(HERE / "pages.jsonl", "w", encoding="utf-8", newline="\n") as pages, \
         open(HERE / "expected.jsonl", "w", encoding="utf-8", newline="\n") as expected:
        for title, text, posts in CASES:
            pages.write(json.dumps({"title": title, "wikitext": text}, ensure_ascii=False) + "\n")
            for heading, author, ts, depth, mass in posts:
                expected.write(json.dumps({"page_owner": owner_of(title), "thread": heading, "author": author,
                                           "timestamp": ts, "depth": depth, "mass_message": mass},
                                          ensure_ascii=False, separators=(",", ":")) + "\n")
    print(len(CASES), "pages,", sum(len(p) for _, _, p in CASES), "posts")


if __name__ == "__main__":
    main()
