#!/usr/bin/env python3
"""Generate the golden fixture corpus and its sidecar expectations.

Everything here is computed from the generator's own plan — no imports from
the package under test — so the sidecars stay an independent oracle. Rerun
to regenerate; output is deterministic.
"""

import json
import math
import random
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "golden"
RNG = random.Random(20200901)

# ---------------------------------------------------------------- verdicts

VERDICT_CLASS = {
    "False": "false", "FALSE": "false", "Fake": "false", "Incorrect": "false",
    "No evidence": "false", "Pants on Fire": "false",
    "Misleading": "partially_false", "MISLEADING": "partially_false",
    "Partially false": "partially_false", "Partly false": "partially_false",
    "Mostly false": "partially_false", "Half True": "partially_false",
    "Missing context": "partially_false",
    "True": "true", "Mostly true": "true", "Correct": "true",
    "Satire": "other", "Unproven": "other",
}
VERDICT_POOL = (
    ["False"] * 10 + ["FALSE"] * 2 + ["Fake"] * 3 + ["No evidence"] * 2 +
    ["Incorrect"] * 2 + ["Misleading"] * 5 + ["MISLEADING"] * 2 +
    ["Partially false"] * 4 + ["Half True"] * 2 + ["Mostly false"] * 2 +
    ["True"] * 2 + ["Mostly true"] * 1 + ["Satire"] * 2 + ["Unproven"] * 1
)
assert len(VERDICT_POOL) == 40

PUBLISHERS = ["AFP", "Snopes", "Boomlive", "Quint", "Correctiv", "Maldita",
              "AFP Fact Check", "PolitiFact"]
COUNTRIES = ["USA", "India", "Germany", "Brazil", "Australia", "Spain",
             "France", "United Kingdom", "India, Brazil", "USA, Canada"]

# ---------------------------------------------------------------- languages

SENTENCES = {
    "en": [
        "Social media users have shared a post claiming that the new measure went into effect last week.",
        "The claim spread quickly in several large groups before moderators intervened.",
        "Officials told reporters that no such order had been signed or even drafted.",
        "A spokesperson for the health agency said the figures had been taken out of context.",
        "The original footage was filmed years earlier and in a different country.",
        "Local journalists traced the photograph to an unrelated event in another city.",
        "Experts consulted for this article said the document contains several obvious errors.",
        "The post was shared thousands of times before the correction appeared.",
        "Readers flagged the video to our team through the tip line over the weekend.",
        "Public records show the meeting described in the post never took place.",
    ],
    "de": [
        "In sozialen Netzwerken verbreitet sich ein Beitrag, der behauptet, die neue Regel gelte seit letzter Woche.",
        "Die Behauptung kursierte in mehreren großen Gruppen, bevor Moderatoren eingriffen.",
        "Die Behörden erklärten gegenüber Journalisten, eine solche Anordnung sei nie unterzeichnet worden.",
        "Eine Sprecherin des Gesundheitsamtes sagte, die Zahlen seien aus dem Zusammenhang gerissen.",
        "Die ursprüngliche Aufnahme entstand Jahre zuvor in einem anderen Land.",
        "Lokale Journalisten führten das Foto auf ein anderes Ereignis in einer anderen Stadt zurück.",
        "Befragte Fachleute sagten, das Dokument enthalte mehrere offensichtliche Fehler.",
        "Der Beitrag wurde tausendfach geteilt, bevor die Richtigstellung erschien.",
    ],
    "es": [
        "En las redes sociales circula una publicación que asegura que la nueva medida entró en vigor la semana pasada.",
        "La afirmación se difundió rápidamente en varios grupos antes de que intervinieran los moderadores.",
        "Las autoridades dijeron a la prensa que ninguna orden de ese tipo fue firmada.",
        "Una portavoz de la agencia de salud señaló que las cifras fueron sacadas de contexto.",
        "Las imágenes originales se grabaron años antes y en otro país.",
        "Periodistas locales rastrearon la fotografía hasta un acto sin relación en otra ciudad.",
        "Los expertos consultados indicaron que el documento contiene varios errores evidentes.",
        "La publicación fue compartida miles de veces antes de que apareciera la corrección.",
    ],
    "fr": [
        "Sur les réseaux sociaux, une publication affirme que la nouvelle mesure est entrée en vigueur la semaine dernière.",
        "L'affirmation s'est répandue dans plusieurs grands groupes avant l'intervention des modérateurs.",
        "Les autorités ont indiqué à la presse qu'aucun décret de ce genre n'avait été signé.",
        "Une porte-parole de l'agence de santé a expliqué que les chiffres étaient sortis de leur contexte.",
        "Les images d'origine ont été tournées des années plus tôt dans un autre pays.",
        "Des journalistes locaux ont retrouvé la photographie d'un événement sans rapport dans une autre ville.",
        "Les experts consultés estiment que le document contient plusieurs erreurs manifestes.",
        "La publication a été partagée des milliers de fois avant la parution du correctif.",
    ],
    "hi": [
        "सोशल मीडिया पर एक पोस्ट साझा की जा रही है जिसमें दावा है कि नया नियम पिछले हफ्ते लागू हो गया।",
        "मॉडरेटरों के हस्तक्षेप से पहले यह दावा कई बड़े समूहों में तेजी से फैल गया।",
        "अधिकारियों ने पत्रकारों को बताया कि ऐसा कोई आदेश कभी जारी नहीं हुआ।",
        "स्वास्थ्य एजेंसी की प्रवक्ता ने कहा कि आंकड़ों को संदर्भ से काटकर पेश किया गया।",
        "मूल फुटेज कई साल पहले किसी दूसरे देश में फिल्माया गया था।",
        "स्थानीय पत्रकारों ने तस्वीर को दूसरे शहर की असंबंधित घटना से जोड़ा।",
        "इस लेख के लिए परामर्श किए गए विशेषज्ञों ने कहा कि दस्तावेज में कई स्पष्ट गलतियां हैं।",
        "सुधार प्रकाशित होने से पहले पोस्ट हजारों बार साझा की जा चुकी थी।",
    ],
}
ARTICLE_LANGS = {3: "de", 14: "de", 21: "es", 30: "fr", 36: "hi"}

TITLES = {
    "en": "Post claims {} — here is what we found",
    "de": "Beitrag behauptet {} — was wir herausgefunden haben",
    "es": "Una publicación afirma {} — esto encontramos",
    "fr": "Une publication affirme {} — voici ce que nous avons trouvé",
    "hi": "पोस्ट में दावा {} — हमने यह पाया",
}
CLAIMS = ["a cure was hidden", "borders closed overnight", "the photo is recent",
          "officials admitted the plan", "the video shows the capital",
          "animals enforce the lockdown", "the law fines walkers",
          "masks cause illness", "the vaccine changes DNA", "5G spreads the virus"]

# ---------------------------------------------------------------- uid plans

TW_UIDS = [str(1300839981247913985 + i * 7919) for i in range(40)]
YT_ALPHABET = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_-"
YT_UIDS = ["".join(RNG.choice(YT_ALPHABET) for _ in range(11)) for _ in range(26)]
RD_UIDS = ["Coronavirus", "COVID19", "science", "worldnews", "AskDocs",
           "medicine", "nursing", "India", "brasil", "europe", "Health",
           "conspiracy", "skeptic", "news", "UpliftingNews", "funny", "pics",
           "videos", "dataisbeautiful", "explainlikeimfive", "OutOfTheLoop",
           "todayilearned", "Futurology"]
IG_UIDS = ["".join(RNG.choice(YT_ALPHABET) for _ in range(11)) for _ in range(8)]
WK_UIDS = ["COVID-19_pandemic", "Hydroxychloroquine", "Social_distancing"]

assert len(set(YT_UIDS)) == 26 and len(set(IG_UIDS)) == 8

PLAN = {
    "Twitter":   {"uids": TW_UIDS, "deleted": TW_UIDS[0:4], "dup": TW_UIDS[4:9],
                  "modality": {"text": 20, "image": 6, "text+image": 7, "video": 3}},
    "YouTube":   {"uids": YT_UIDS, "deleted": YT_UIDS[0:3], "dup": YT_UIDS[3:5],
                  "modality": {"video": 23}},
    "Reddit":    {"uids": RD_UIDS, "deleted": RD_UIDS[0:2], "dup": RD_UIDS[2:4],
                  "modality": {"text": 10, "image": 5, "text+image": 4, "video": 2}},
    "Instagram": {"uids": IG_UIDS, "deleted": IG_UIDS[0:1], "dup": IG_UIDS[1:2],
                  "modality": {"image": 4, "text+image": 2, "video": 1}},
    "Wikipedia": {"uids": WK_UIDS, "deleted": [], "dup": [],
                  "modality": {"text": 3}},
}

MONTH_WEIGHTS = {"2020-01": 4, "2020-02": 6, "2020-03": 16, "2020-04": 18,
                 "2020-05": 14, "2020-06": 9, "2020-07": 7, "2020-08": 6}


def make_raw_url(platform: str, uid: str, variant: int) -> str:
    v = variant % 6
    if platform == "Twitter":
        user = RNG.choice(["healthdesk", "factwatch", "newsroom_hq", "citizen_k", "drlimasays"])
        base = f"https://twitter.com/{user}/status/{uid}"
        return [base, base + "?s=20", base + "/", "HTTPS://Twitter.com/" + user + "/status/" + uid,
                base + "?ref_src=twsrc%5Etfw", f"https://mobile.twitter.com/{user}/status/{uid}#m"][v]
    if platform == "YouTube":
        base = f"https://www.youtube.com/watch?v={uid}"
        return [base, base + "&t=43", f"https://youtu.be/{uid}", base + "&utm_source=share",
                f"https://m.youtube.com/watch?v={uid}", f"https://youtu.be/{uid}?t=12"][v]
    if platform == "Reddit":
        base = f"https://www.reddit.com/r/{uid}"
        return [base + "/", base, base + "/comments/abc123/some_thread_title/",
                f"https://old.reddit.com/r/{uid}/", base + "/?utm_medium=web", base + "/top/"][v]
    if platform == "Instagram":
        kind = ["p", "p", "reel", "p", "tv", "p"][v]
        base = f"https://www.instagram.com/{kind}/{uid}/"
        return [base, base + "?igshid=xyz123", base, base + "?utm_source=ig_embed", base, base][v]
    if platform == "Wikipedia":
        host = ["en", "en", "de"][variant % 3]
        return f"https://{host}.wikipedia.org/wiki/{uid}" + ("#History" if v == 1 else "")
    raise ValueError(platform)


IN_BODY_DECOYS = [
    "https://example.org/archive/item-{n}",
    "https://www.who.int/news/item/update-{n}",
    "https://twitter.com/factwatch",                      # profile, no status
    "https://www.youtube.com/channel/UC0aBcDeFgH{n}",     # channel, no v=
    "https://www.reddit.com/user/throwaway{n}",           # user page, no /r/
    "https://t.co/xYz{n}",                                # shortener stays Other offline
    "https://bit.ly/3k{n}",
    "https://www.facebook.com/HealthDesk/about",          # no post path
    "https://en.wikipedia.org/",                          # root, no /wiki/
    "https://www.instagram.com/healthdesk{n}",            # profile, no /p/
    "/about-our-checks",                                  # relative, resolves to Other
    "mailto:tips@factcheck.example",
]

CHROME_DECOYS = [
    "https://factcheck.example/",
    "https://factcheck.example/privacy",
    "https://factcheck.example/tags/health",
    "https://twitter.com/factcheck_site",
    "https://www.facebook.com/factchecksite",
    # full status links in page chrome: body scoping must keep these out
    "https://twitter.com/site_promo/status/999900001111222333",
    "https://twitter.com/site_promo/status/999900004444555666",
]


def build():
    articles = []
    for i in range(1, 41):
        lang = ARTICLE_LANGS.get(i, "en")
        news_id = f"PY{i}"
        if i == 9:
            articles.append({
                "news_id": news_id,
                "source_url": "https://factcheck.afp.com/video-actually-shows-anti-government-protest-belarus",
                "title": "A video shows a rally against coronavirus restrictions in the British capital of London.",
                "date_display": "01 September 2020", "published_date": "2020-09-01",
                "verdict": "False", "publisher": "AFP", "countries": "Australia",
                "language": "en",
            })
            continue
        month = RNG.choices(list(MONTH_WEIGHTS), weights=MONTH_WEIGHTS.values())[0]
        day = RNG.randint(1, 28)
        iso = f"{month}-{day:02d}"
        display = RNG.choice([
            iso,
            "{} {} {}".format(f"{day:02d}", ["January", "February", "March", "April", "May",
                                             "June", "July", "August"][int(month[5:]) - 1], 2020),
            "{} {}, {}".format(["January", "February", "March", "April", "May",
                                "June", "July", "August"][int(month[5:]) - 1], day, 2020),
        ])
        articles.append({
            "news_id": news_id,
            "source_url": f"https://factcheck.example/claims/{i:02d}-{CLAIMS[i % 10].replace(' ', '-')}",
            "title": TITLES[lang].format(CLAIMS[i % 10]),
            "date_display": display, "published_date": iso,
            "verdict": VERDICT_POOL[i - 1],
            "publisher": RNG.choice(PUBLISHERS),
            "countries": RNG.choice(COUNTRIES),
            "language": lang,
        })
    by_id = {a["news_id"]: a for a in articles}

    # -- links ----------------------------------------------------------
    linked_ids = sorted(RNG.sample(range(1, 41), 22))
    linked_ids = [f"PY{i}" for i in linked_ids]
    links = []        # {news_id, platform, uid, raw_url}
    cursor = 0

    def next_article(exclude=None):
        nonlocal cursor
        for _ in range(len(linked_ids)):
            news_id = linked_ids[cursor % len(linked_ids)]
            cursor += 1
            if news_id != exclude:
                return news_id
        raise RuntimeError("no article available")

    primary_article = {}
    variant = 0
    for platform, plan in PLAN.items():
        for uid in plan["uids"]:
            news_id = next_article()
            links.append({"news_id": news_id, "platform": platform, "uid": uid,
                          "raw_url": make_raw_url(platform, uid, variant)})
            primary_article[(platform, uid)] = news_id
            variant += 1
    for platform, plan in PLAN.items():
        for uid in plan["deleted"] + plan["dup"]:
            news_id = next_article(exclude=primary_article[(platform, uid)])
            links.append({"news_id": news_id, "platform": platform, "uid": uid,
                          "raw_url": make_raw_url(platform, uid, variant)})
            variant += 1
    assert len(links) == 120

    # force two dup pairs onto equal article dates to exercise the news_id
    # tie-break (plain string comparison)
    dup_pairs = {}
    for link in links:
        key = (link["platform"], link["uid"])
        if link["uid"] in PLAN[link["platform"]]["dup"]:
            dup_pairs.setdefault(key, []).append(link["news_id"])
    tie_keys = sorted(dup_pairs)[:2]
    for key in tie_keys:
        a, b = dup_pairs[key]
        if by_id[a]["news_id"] == "PY9" or by_id[b]["news_id"] == "PY9":
            continue  # keep the showcase article's date untouched
        by_id[b]["published_date"] = by_id[a]["published_date"]
        by_id[b]["date_display"] = by_id[a]["published_date"]

    # -- fetched post content -------------------------------------------
    posts = {}
    for platform, plan in PLAN.items():
        fetched = [u for u in plan["uids"] if u not in plan["deleted"]]
        modalities = []
        for modality, count in plan["modality"].items():
            modalities.extend([modality] * count)
        assert len(modalities) == len(fetched)
        for uid, modality in zip(fetched, modalities):
            month = RNG.choices(list(MONTH_WEIGHTS), weights=MONTH_WEIGHTS.values())[0]
            posted_at = (f"{month}-{RNG.randint(1, 28):02d}T{RNG.randint(0, 23):02d}:00:00Z"
                         if RNG.random() < 0.6 else None)
            text = ""
            media = []
            if modality in ("text", "text+image"):
                text = RNG.choice([
                    "Breaking: officials confirm the report is entirely fabricated.",
                    "Sharing this before it gets taken down. Watch till the end!",
                    "Das muss jeder sehen, unglaublich was hier passiert.",
                    "Esto lo tienen que ver todos, increíble \U0001F632",
                    "Thread: what the document actually says, point by point.",
                    "They do not want you to know this. Read carefully.",
                ])
            if modality == "image":
                media = [f"https://media.example/{uid}.jpg"]
            elif modality == "text+image":
                media = [f"https://media.example/{uid}.jpg"]
            elif modality == "video":
                media = [f"https://media.example/{uid}.mp4"]
            if platform == "YouTube":
                text = ""
                media = [f"https://media.example/{uid}.mp4"]
            metrics = {"likes": RNG.randint(0, 50000), "shares": RNG.randint(0, 8000),
                       "comments": RNG.randint(0, 3000)}
            if modality == "video":
                metrics["views"] = RNG.randint(100, 900000)
            posts[(platform, uid)] = {
                "platform": platform, "post_uid": uid,
                "text_content": text, "media_refs": media,
                "author": RNG.choice(["@healthdesk", "@factwatch", "@citizen_k",
                                      "NewsChannel", "u/mod_team", ""]),
                "posted_at": posted_at,
                "metrics": metrics,
                "modality": modality,
            }

    # -- expected pipeline outcomes (computed from the plan, not the code)
    labeled = []  # one per link whose uid is fetched
    for link in links:
        plan = PLAN[link["platform"]]
        if link["uid"] in plan["deleted"]:
            continue
        labeled.append(link)
    assert len(labeled) == 100

    def norm(verdict):
        return VERDICT_CLASS.get(verdict, "other")

    groups = {}
    for link in labeled:
        groups.setdefault((link["platform"], link["uid"]), []).append(link["news_id"])
    winners = {}
    for key, ids in groups.items():
        winners[key] = min(ids, key=lambda n: (by_id[n]["published_date"] or "9999", n))
    assert len(winners) == 90
    dropped = [
        {"platform": p, "post_uid": u, "news_id": n, "kept_news_id": winners[(p, u)]}
        for (p, u), ids in groups.items() for n in ids if n != winners[(p, u)]
    ]
    assert len(dropped) == 10

    platform_rows = {}
    for link in links:
        row = platform_rows.setdefault(link["platform"], {
            "platform": link["platform"], "total_links": 0, "unique_posts": 0,
            "text": 0, "image": 0, "text+image": 0, "video": 0})
        row["total_links"] += 1
    class_rows = {}
    timeline_points = {}
    for (platform, uid), winner in winners.items():
        post = posts[(platform, uid)]
        platform_rows[platform]["unique_posts"] += 1
        platform_rows[platform][post["modality"]] += 1
        crow = class_rows.setdefault(platform, {
            "platform": platform, "false": 0, "partially_false": 0, "true": 0, "other": 0})
        crow[norm(by_id[winner]["verdict"])] += 1
        month = (post["posted_at"][:7] if post["posted_at"]
                 else by_id[winner]["published_date"][:7])
        fallback = post["posted_at"] is None
        trow = timeline_points.setdefault(platform, {}).setdefault(
            month, {"platform": platform, "bucket": month, "count": 0, "fallback_count": 0})
        trow["count"] += 1
        trow["fallback_count"] += int(fallback)

    timeline_all = []
    for platform in sorted(timeline_points):
        timeline_all.extend(timeline_points[platform][m]
                            for m in sorted(timeline_points[platform]))
    visible_totals = {p: platform_rows[p]["unique_posts"] for p in platform_rows}
    timeline_over_25 = [row for row in timeline_all if visible_totals[row["platform"]] > 25]

    # -- write fixtures ---------------------------------------------------
    (OUT / "articles").mkdir(parents=True, exist_ok=True)
    (OUT / "sidecar").mkdir(exist_ok=True)
    body_anchor_plan, decoy_log = render_articles(articles, links, by_id)
    assert len(decoy_log) == 60
    write_posts(posts, PLAN)
    write_manifest(articles)

    sidecar_links = []
    for news_id, anchors in body_anchor_plan.items():
        for index, anchor in enumerate(anchors):
            if anchor["kind"] == "planted":
                sidecar_links.append({
                    "news_id": news_id, "platform": anchor["platform"],
                    "post_uid": anchor["uid"], "raw_url": anchor["raw_url"],
                    "anchor_index": index,
                })
    assert len(sidecar_links) == 120

    (OUT / "sidecar" / "articles.json").write_text(json.dumps([
        {"news_id": a["news_id"], "source_url": a["source_url"], "title": a["title"],
         "published_date": a["published_date"], "verdict_raw": a["verdict"],
         "publisher": a["publisher"],
         "countries": [c.strip() for c in a["countries"].split(",")],
         "language": a["language"]}
        for a in articles], indent=1, ensure_ascii=False), encoding="utf-8")
    (OUT / "sidecar" / "links.json").write_text(
        json.dumps(sidecar_links, indent=1), encoding="utf-8")
    (OUT / "sidecar" / "decoys.json").write_text(
        json.dumps(decoy_log, indent=1), encoding="utf-8")
    (OUT / "sidecar" / "expected_platform_summary.json").write_text(
        json.dumps([platform_rows[p] for p in sorted(platform_rows)], indent=1),
        encoding="utf-8")
    (OUT / "sidecar" / "expected_class_distribution.json").write_text(
        json.dumps([class_rows[p] for p in sorted(class_rows)], indent=1),
        encoding="utf-8")
    (OUT / "sidecar" / "expected_timeline.json").write_text(
        json.dumps({"all": timeline_all, "over_25": timeline_over_25}, indent=1),
        encoding="utf-8")
    (OUT / "sidecar" / "expected_counts.json").write_text(json.dumps({
        "articles": 40,
        "links": 120,
        "unique_uids": 100,
        "fetch": {"fetched": 90, "deleted": 10, "unavailable": 0},
        "labeled": 100,
        "dedupe": {"total_labeled": 100, "unique_kept": 90, "duplicates_dropped": 10},
        "link_coverage": 22 / 40,
        "dedup_dropped": sorted(dropped, key=lambda d: (d["platform"], d["post_uid"])),
    }, indent=1), encoding="utf-8")
    print(f"golden corpus written under {OUT}")


def render_articles(articles, links, by_id):
    """Write the 40 HTML files; returns per-article ordered body anchors."""
    links_by_article = {}
    for link in links:
        links_by_article.setdefault(link["news_id"], []).append(link)

    # exactly 60 decoys: one in-body decoy per article (40) plus one chrome
    # anchor on the first 20 articles; the chrome set includes full status
    # URLs that only body scoping keeps out
    decoy_cycle = 0
    decoy_log = []
    body_plan = {}
    for pos, article in enumerate(articles, 1):
        lang = article["language"]
        sentences = SENTENCES[lang]
        planted = links_by_article.get(article["news_id"], [])
        anchors = []
        for link in planted:
            anchors.append({"kind": "planted", "platform": link["platform"],
                            "uid": link["uid"], "raw_url": link["raw_url"]})
        template = IN_BODY_DECOYS[decoy_cycle % len(IN_BODY_DECOYS)]
        decoy_url = template.format(n=decoy_cycle)
        anchors.append({"kind": "decoy", "raw_url": decoy_url})
        decoy_log.append({"news_id": article["news_id"], "raw_url": decoy_url,
                          "location": "body"})
        decoy_cycle += 1
        RNG.shuffle(anchors)
        body_plan[article["news_id"]] = anchors

        paragraphs = []
        for idx, anchor in enumerate(anchors):
            sentence = sentences[idx % len(sentences)]
            label = anchor.get("platform", "web")
            a_tag = f'<a href="{anchor["raw_url"]}">{label}</a>'
            if anchor["kind"] == "planted" and anchor["platform"] == "Twitter" and idx % 3 == 0:
                paragraphs.append(
                    '<blockquote class="twitter-tweet"><p>'
                    f'{sentence}</p>{a_tag}</blockquote>')
            else:
                paragraphs.append(f"<p>{sentence} {a_tag}</p>")
        filler = [f"<p>{s}</p>" for s in sentences[:6]]
        body_html = "\n      ".join(filler + paragraphs)

        if pos <= 20:
            chrome_url = CHROME_DECOYS[pos % len(CHROME_DECOYS)]
            decoy_log.append({"news_id": article["news_id"], "raw_url": chrome_url,
                              "location": "chrome"})
            nav_links = f'<a href="{chrome_url}">site link</a>'
        else:
            nav_links = ""

        verdict_span = ("" if article["news_id"] == "PY33" else
                        f'<span class="verdict">{article["verdict"]}</span>')
        html = f"""<!doctype html>
<html lang="{lang}">
<head>
  <meta charset="utf-8">
  <title>{article["title"]}</title>
</head>
<body>
  <nav class="site-nav">{nav_links}</nav>
  <article class="fact-check">
    <h1 class="claim-title">{article["title"]}</h1>
    <div class="meta">
      <span class="date">{article["date_display"]}</span>
      {verdict_span}
      <span class="publisher">{article["publisher"]}</span>
      <span class="countries">{article["countries"]}</span>
    </div>
    <div class="article-body">
      {body_html}
    </div>
  </article>
  <footer class="site-footer">Corrections: corrections@factcheck.example</footer>
</body>
</html>
"""
        (OUT / "articles" / f"py{pos:02d}.html").write_text(html, encoding="utf-8")
    return body_plan, decoy_log


def write_posts(posts, plan):
    for platform, p in plan.items():
        pdir = OUT / "posts" / platform
        pdir.mkdir(parents=True, exist_ok=True)
        for uid in p["deleted"]:
            (pdir / f"{uid}.deleted").write_text("", encoding="utf-8")
    for (platform, uid), post in posts.items():
        payload = {k: post[k] for k in ("platform", "post_uid", "text_content",
                                        "media_refs", "author", "posted_at", "metrics")}
        (OUT / "posts" / platform / f"{uid}.json").write_text(
            json.dumps(payload, indent=1, ensure_ascii=False), encoding="utf-8")


def write_manifest(articles):
    entries = []
    for pos, article in enumerate(articles, 1):
        entry = {"source_url": article["source_url"],
                 "html_path": f"articles/py{pos:02d}.html"}
        if article["news_id"] == "PY33":
            entry["verdict_hint"] = article["verdict"]
        entries.append(entry)
    (OUT / "manifest.json").write_text(json.dumps({
        "source_name": "Example Fact Check Hub",
        "source_acronym": "PY",
        "parser_profile": "factcheck_v1",
        "entries": entries,
    }, indent=1), encoding="utf-8")
    (OUT / "factcheck_v1.json").write_text(json.dumps({
        "profile_name": "factcheck_v1",
        "selectors": {
            "title": {"selector": "h1.claim-title", "text": True},
            "published_date": {"selector": "span.date", "text": True},
            "body": {"selector": "div.article-body", "text": True},
            "verdict": {"selector": "span.verdict", "text": True},
            "publisher": {"selector": "span.publisher", "text": True},
            "countries": {"selector": "span.countries", "text": True},
        },
    }, indent=1), encoding="utf-8")


if __name__ == "__main__":
    build()
