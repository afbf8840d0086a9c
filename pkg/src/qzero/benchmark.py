"""Bundled synthetic benchmark for end-to-end directional checks.

A 50-document toy corpus over four topics (sports, business, technology,
health) with fictional entities. Category strings carry label-indicative
vocabulary; document bodies carry the entity names. The 20 evaluation
queries are implicit: they mention entities only, so classifying the raw
text with static word vectors has little to go on, while the
retrieve-then-reformulate path sees the topical category vocabulary.

The 16-dimensional vector table places each topic on its own orthogonal
axis block, so expected outcomes are auditable by hand. Run
`python -m qzero.benchmark --out DIR` to materialize the files.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

DIM = 16

TOPIC_AXES = {"sports": 0, "business": 4, "technology": 8, "health": 12}

LABELS = ("sports", "business & finance", "technology", "health")

TOPIC_LABEL = {
    "sports": "sports",
    "business": "business & finance",
    "technology": "technology",
    "health": "health",
}

# Words carrying a full-strength vector on their topic's axis block.
TOPIC_WORDS = {
    "sports": [
        "sports", "athletes", "players", "teams", "clubs", "basketball",
        "football", "tennis", "hockey", "rugby", "olympic", "champions",
        "tournaments", "stadiums", "swimming", "marathon",
    ],
    "business": [
        "business", "finance", "companies", "corporations", "banks", "bank",
        "markets", "investors", "investment", "financial", "trade",
        "retailers", "commerce", "insurance", "funds", "economy", "logistics",
    ],
    "technology": [
        "technology", "software", "computing", "robotics", "semiconductors",
        "internet", "electronics", "hardware", "programming", "networks",
        "encryption", "cybersecurity", "datacenters", "platforms",
    ],
    "health": [
        "health", "medicine", "diseases", "hospitals", "doctors", "vaccines",
        "drugs", "surgery", "clinics", "clinic", "epidemics", "treatments",
        "pharmaceuticals", "outbreaks",
    ],
}

# Weak-leaning filler words: enough signal for the raw-text baseline to
# form an opinion, not enough to be right about entity-only queries.
LEAN_WORDS = {
    "record": "sports",
    "transfer": "business",
    "announces": "business",
    "deal": "business",
    "quarter": "business",
}

DOCS = [
    # ------------------------------------------------------------ sports
    {
        "id": "s01", "topic": "sports", "title": "Kalvora Jensen",
        "text": (
            "Kalvora Jensen is a basketball guard and the captain of the "
            "Thornbury Hawks. Kalvora Jensen scored in every playoff match "
            "this season, and supporters of the Hawks praise Jensen as the "
            "finest shooter Thornbury ever signed."
        ),
        "categories": ["Basketball players", "Thornbury Hawks athletes", "Sports champions"],
    },
    {
        "id": "s02", "topic": "sports", "title": "Thornbury Hawks",
        "text": (
            "The Thornbury Hawks are a professional basketball club playing "
            "in the national first division. The Hawks roster mixes veteran "
            "players and young athletes, and Thornbury supporters fill the "
            "stands at every home fixture of the season."
        ),
        "categories": ["Basketball clubs", "Sports teams", "Thornbury sports organizations"],
    },
    {
        "id": "s03", "topic": "sports", "title": "Medrano Valle",
        "text": (
            "Medrano Valle is a football forward playing for Ostvale United. "
            "Valle arrived at Ostvale as a teenager, and Medrano Valle now "
            "leads the league scoring chart, delighting United supporters in "
            "every derby of the season."
        ),
        "categories": ["Football players", "Ostvale United athletes", "Olympic sports competitors"],
    },
    {
        "id": "s04", "topic": "sports", "title": "Ostvale United",
        "text": (
            "Ostvale United is a football club with a long tradition of "
            "attacking play. United players train beside the Ostvale river "
            "ground, and the club supporters regard every season at Ostvale "
            "as a festival of football."
        ),
        "categories": ["Football clubs", "Sports teams", "Ostvale sports organizations"],
    },
    {
        "id": "s05", "topic": "sports", "title": "Rilla Okafor",
        "text": (
            "Rilla Okafor is a tennis champion praised for a powerful serve. "
            "Okafor trains in Brexford every spring, and Rilla Okafor lifted "
            "the national singles trophy this season, a feat supporters of "
            "tennis celebrate widely."
        ),
        "categories": ["Tennis players", "Sports champions", "Olympic athletes"],
    },
    {
        "id": "s06", "topic": "sports", "title": "Brexford Open",
        "text": (
            "The Brexford Open is a tennis tournament played on grass each "
            "summer. Qualifiers and champions alike praise the Brexford Open "
            "crowds, and the tournament remains the event every tennis "
            "player circles on the calendar."
        ),
        "categories": ["Tennis tournaments", "Sports events", "Brexford sports competitions"],
    },
    {
        "id": "s07", "topic": "sports", "title": "Danel Hurst",
        "text": (
            "Danel Hurst is a sprinter and an olympic finalist. Hurst broke "
            "the national indoor mark twice, and Danel Hurst now prepares "
            "for the Veloria Games, where sprint supporters expect another "
            "golden run."
        ),
        "categories": ["Olympic athletes", "Sports champions", "Track sports competitors"],
    },
    {
        "id": "s08", "topic": "sports", "title": "Veloria Games",
        "text": (
            "The Veloria Games are a multi sport event gathering athletes in "
            "swimming, tennis, and marathon running. Every edition of the "
            "Veloria Games crowns new champions, and sports fans travel far "
            "to attend the Veloria ceremonies."
        ),
        "categories": ["Olympic sports events", "Sports tournaments", "Veloria sports competitions"],
    },
    {
        "id": "s09", "topic": "sports", "title": "Corvale Rovers",
        "text": (
            "Corvale Rovers are a rugby club famous for a fierce scrum. The "
            "Rovers academy develops young rugby players, and Corvale crowds "
            "sing loudly in the stadium whenever the Rovers defend the home "
            "line."
        ),
        "categories": ["Rugby clubs", "Sports teams", "Corvale sports organizations"],
    },
    {
        "id": "s10", "topic": "sports", "title": "Ilsa Brandt",
        "text": (
            "Ilsa Brandt is a swimming medalist who anchors the national "
            "relay. Brandt trains at dawn in the Norgate pool, and Ilsa "
            "Brandt holds three continental titles in freestyle swimming "
            "events."
        ),
        "categories": ["Swimming athletes", "Olympic champions", "Sports medalists"],
    },
    {
        "id": "s11", "topic": "sports", "title": "Norgate Marathon",
        "text": (
            "The Norgate Marathon is a road race through the old town of "
            "Norgate. Thousands of runners enter the Norgate Marathon each "
            "autumn, and marathon pacers guide first timers toward the "
            "finish banner."
        ),
        "categories": ["Marathon races", "Sports events", "Norgate sports competitions"],
    },
    {
        "id": "s12", "topic": "sports", "title": "Petrov Aliyev",
        "text": (
            "Petrov Aliyev is a hockey defender known for calm passing. "
            "Aliyev captains the national hockey side, and Petrov Aliyev "
            "blocks more shots than any defender the league counted this "
            "season."
        ),
        "categories": ["Hockey players", "Sports champions", "Olympic athletes"],
    },
    {
        "id": "s13", "topic": "sports", "title": "Stellmark Arena",
        "text": (
            "Stellmark Arena is an indoor stadium hosting basketball and "
            "hockey fixtures. The Stellmark floor converts overnight between "
            "sports, and Arena crews keep the ice and the hardwood ready for "
            "every doubleheader weekend."
        ),
        "categories": ["Sports stadiums", "Basketball arenas", "Stellmark sports venues"],
    },
    # ---------------------------------------------------------- business
    {
        "id": "b01", "topic": "business", "title": "Verdant Crest Capital",
        "text": (
            "Verdant Crest Capital is an investment firm managing pension "
            "assets. Verdant Crest analysts screen equities across global "
            "markets, and the Capital partners report steady returns to "
            "investors every fiscal year."
        ),
        "categories": ["Investment companies", "Financial markets investors", "Verdant Crest finance firms"],
    },
    {
        "id": "b02", "topic": "business", "title": "Halvorsen Group",
        "text": (
            "The Halvorsen Group is a diversified conglomerate spanning "
            "shipping, retail chains, and commodity trade. Halvorsen "
            "directors rarely speak publicly, yet the Group earnings "
            "briefings move markets whenever quarterly figures surprise "
            "analysts."
        ),
        "categories": ["Trade corporations", "Business conglomerates", "Halvorsen companies"],
    },
    {
        "id": "b03", "topic": "business", "title": "Quillon Bank",
        "text": (
            "Quillon Bank is a commercial bank serving merchants since the "
            "colonial era. Quillon tellers handle deposits in fourteen "
            "currencies, and the Bank lending desk finances warehouses, "
            "vessels, and seasonal trade credit."
        ),
        "categories": ["Banks", "Finance companies", "Quillon banking corporations"],
    },
    {
        "id": "b04", "topic": "business", "title": "Marovia Exchange",
        "text": (
            "The Marovia Exchange is a stock exchange listing mining houses "
            "and insurance groups. Brokers crowd the Marovia floor at the "
            "morning bell, and Exchange clerks post closing prices that "
            "investors study nightly."
        ),
        "categories": ["Stock exchanges", "Financial markets", "Marovia trade institutions"],
    },
    {
        "id": "b05", "topic": "business", "title": "Tessa Lindqvist",
        "text": (
            "Tessa Lindqvist is a chief executive admired across the finance "
            "world. Lindqvist steered two mergers in one decade, and Tessa "
            "Lindqvist chairs the investor council that advises the treasury "
            "on markets policy."
        ),
        "categories": ["Business executives", "Finance investors", "Companies founders"],
    },
    {
        "id": "b06", "topic": "business", "title": "Bramwell Retail",
        "text": (
            "Bramwell Retail operates department stores and grocery chains "
            "in forty towns. Bramwell buyers negotiate directly with "
            "growers, and the Retail division posts its ledger monthly so "
            "investors can audit margins."
        ),
        "categories": ["Retailers", "Commerce companies", "Bramwell business chains"],
    },
    {
        "id": "b07", "topic": "business", "title": "Aurelex Insurance",
        "text": (
            "Aurelex Insurance underwrites marine cargo and harvest risk. "
            "Aurelex actuaries price storm exposure along the coast, and the "
            "Insurance claims office settles fairly, which keeps brokers "
            "loyal to Aurelex."
        ),
        "categories": ["Insurance companies", "Finance corporations", "Aurelex business firms"],
    },
    {
        "id": "b08", "topic": "business", "title": "Caldemere Mining",
        "text": (
            "Caldemere Mining digs copper and potash in the northern ranges. "
            "Caldemere crews rotate by rail to the pits, and the Mining "
            "company ships ore concentrate to smelters under long supply "
            "contracts."
        ),
        "categories": ["Mining corporations", "Commodity trade companies", "Caldemere business firms"],
    },
    {
        "id": "b09", "topic": "business", "title": "Fennick Logistics",
        "text": (
            "Fennick Logistics moves freight between ports and inland "
            "depots. Fennick dispatchers track every container by code, and "
            "the Logistics fleet adds routes each winter as trade volumes "
            "swell across the region."
        ),
        "categories": ["Logistics companies", "Trade corporations", "Fennick business firms"],
    },
    {
        "id": "b10", "topic": "business", "title": "Orenda Foods",
        "text": (
            "Orenda Foods packages tinned fish, flour, and preserves for "
            "export. Orenda buyers contract farms a full year early, and the "
            "Foods brand appears in markets across the continent, making "
            "Orenda a household name in commerce."
        ),
        "categories": ["Commerce companies", "Trade corporations", "Orenda business brands"],
    },
    {
        "id": "b11", "topic": "business", "title": "Darian Voss",
        "text": (
            "Darian Voss manages a macro fund trading currencies and bonds. "
            "Voss publishes a letter on the economy each month, and Darian "
            "Voss famously shorted copper before the smelter glut hit "
            "markets."
        ),
        "categories": ["Finance investors", "Investment funds", "Business economy figures"],
    },
    {
        "id": "b12", "topic": "business", "title": "Lumara Holdings",
        "text": (
            "Lumara Holdings owns stakes in banks, insurers, and retailers "
            "across three markets. The Lumara directors meet quietly each "
            "spring, and Holdings accountants consolidate business results "
            "before investors read them aloud."
        ),
        "categories": ["Investment companies", "Business corporations", "Lumara finance firms"],
    },
    {
        "id": "b13", "topic": "business", "title": "Westvale Mercantile",
        "text": (
            "Westvale Mercantile is a trading house dealing in grain, "
            "timber, and wool. Mercantile agents wire offers at dawn, and "
            "Westvale ledgers log every consignment so commerce partners "
            "settle accounts in good faith."
        ),
        "categories": ["Trade companies", "Commerce markets", "Westvale business firms"],
    },
    # -------------------------------------------------------- technology
    {
        "id": "t01", "topic": "technology", "title": "Nexivo Systems",
        "text": (
            "Nexivo Systems builds workflow software for publishers and "
            "studios. Nexivo engineers release updates weekly, and the "
            "Systems platform syncs drafts across devices so editors never "
            "lose a revision."
        ),
        "categories": ["Software platforms", "Internet technology vendors", "Nexivo computing products"],
    },
    {
        "id": "t02", "topic": "technology", "title": "Qubitra Labs",
        "text": (
            "Qubitra Labs researches quantum computing hardware at cryogenic "
            "temperatures. Qubitra physicists tune qubit arrays nightly, and "
            "the Labs simulator lets students explore computing circuits "
            "without touching the fragile machines."
        ),
        "categories": ["Quantum computing laboratories", "Technology research organizations", "Qubitra software projects"],
    },
    {
        "id": "t03", "topic": "technology", "title": "Pellemor Robotics",
        "text": (
            "Pellemor Robotics assembles warehouse robots and robotic arms "
            "for factories. Pellemor firmware guides each gripper, and the "
            "Robotics test hall runs robots around the clock to prove the "
            "hardware safe."
        ),
        "categories": ["Robotics manufacturers", "Technology hardware makers", "Pellemor electronics products"],
    },
    {
        "id": "t04", "topic": "technology", "title": "Syntrel Semiconductors",
        "text": (
            "Syntrel Semiconductors fabricates logic chips on silicon "
            "wafers. Syntrel foundries etch circuits finer each generation, "
            "and the Semiconductors yield team tracks defects per wafer so "
            "processors stay reliable."
        ),
        "categories": ["Semiconductors manufacturers", "Electronics hardware makers", "Syntrel technology products"],
    },
    {
        "id": "t05", "topic": "technology", "title": "Ardent Kernel",
        "text": (
            "Ardent Kernel is a free operating system kernel written for "
            "embedded devices. Volunteer maintainers review Ardent patches "
            "nightly, and the Kernel scheduler code stays small so hobbyists "
            "can port Ardent anywhere."
        ),
        "categories": ["Software projects", "Computing platforms", "Ardent programming tools"],
    },
    {
        "id": "t06", "topic": "technology", "title": "Mirelle Tanaka",
        "text": (
            "Mirelle Tanaka is a programmer who maintains a popular compiler "
            "toolchain. Tanaka lectures on programming languages, and "
            "Mirelle Tanaka mentors contributors who send patches to the "
            "toolchain every release cycle."
        ),
        "categories": ["Technology engineers", "Programming language designers", "Computing pioneers"],
    },
    {
        "id": "t07", "topic": "technology", "title": "Voxhollow",
        "text": (
            "Voxhollow is a social internet platform where readers share "
            "long essays. Voxhollow moderators curate the front feed, and "
            "the platform ranks replies by care rather than speed, which "
            "regulars praise."
        ),
        "categories": ["Internet platforms", "Social software networks", "Voxhollow technology products"],
    },
    {
        "id": "t08", "topic": "technology", "title": "Helix Forge",
        "text": (
            "Helix Forge designs compact workstations and graphics hardware. "
            "Helix thermal engineers quiet the cooling stack, and the Forge "
            "assembly line machines aluminium shells that enthusiasts "
            "photograph endlessly."
        ),
        "categories": ["Hardware makers", "Electronics technology products", "Helix computing devices"],
    },
    {
        "id": "t09", "topic": "technology", "title": "Cindral Networks",
        "text": (
            "Cindral Networks manufactures routers and switching gear for "
            "carrier networks. Cindral engineers stress test each router, "
            "and the Networks firmware ships with encryption on by default, "
            "which operators appreciate."
        ),
        "categories": ["Networks hardware", "Internet infrastructure technology", "Cindral electronics products"],
    },
    {
        "id": "t10", "topic": "technology", "title": "Obsidalia Security",
        "text": (
            "Obsidalia Security audits software for intrusions and sells "
            "encryption tooling. Obsidalia analysts trace breaches to their "
            "root, and the Security handbook on cybersecurity hygiene is "
            "required reading at many internet desks."
        ),
        "categories": ["Cybersecurity software", "Encryption technology", "Obsidalia internet products"],
    },
    {
        "id": "t11", "topic": "technology", "title": "Farrow Stack",
        "text": (
            "Farrow Stack rents cloud computing capacity from regional "
            "datacenters. Farrow dashboards show spend by service, and the "
            "Stack scheduler packs workloads tightly so idle processors "
            "never burn money overnight."
        ),
        "categories": ["Cloud computing platforms", "Software infrastructure technology", "Farrow internet products"],
    },
    {
        "id": "t12", "topic": "technology", "title": "Enoki Compute",
        "text": (
            "Enoki Compute operates hyperscale datacenters beside hydro "
            "dams. Enoki technicians swap failed drives hourly, and the "
            "Compute fleet boots diskless servers over the internet backbone "
            "within seconds."
        ),
        "categories": ["Datacenters", "Computing infrastructure technology", "Enoki internet hardware"],
    },
    # ------------------------------------------------------------ health
    {
        "id": "h01", "topic": "health", "title": "Veletria Clinic",
        "text": (
            "The Veletria Clinic is a teaching hospital network with rural "
            "outposts. Veletria nurses staff mobile clinics in the hills, "
            "and the Clinic pharmacy dispenses medicine to patients "
            "regardless of their means."
        ),
        "categories": ["Hospitals", "Health clinics", "Veletria medicine providers"],
    },
    {
        "id": "h02", "topic": "health", "title": "Imra Solvang",
        "text": (
            "Dr. Imra Solvang is a surgeon specializing in reconstructive "
            "procedures. Solvang operates at the Veletria theatre on "
            "weekdays, and Dr. Imra Solvang teaches residents the suturing "
            "craft every winter term."
        ),
        "categories": ["Surgery doctors", "Medicine specialists", "Health practitioners"],
    },
    {
        "id": "h03", "topic": "health", "title": "Cartwell Pharma",
        "text": (
            "Cartwell Pharma manufactures generic drugs and antiseptic "
            "supplies. Cartwell chemists refine compounds in the old "
            "riverside plant, and the Pharma dispatch wing ships medicine "
            "crates to hospitals nationwide."
        ),
        "categories": ["Pharmaceuticals producers", "Medicine drugs makers", "Cartwell health products"],
    },
    {
        "id": "h04", "topic": "health", "title": "Novapulse Trial",
        "text": (
            "The Novapulse Trial tests a slow release heart tablet across "
            "nine hospitals. Nurses log doses for the Novapulse cohort "
            "daily, and the Trial monitors note every adverse signal before "
            "statisticians see the data."
        ),
        "categories": ["Drugs treatments research", "Medicine studies", "Novapulse health programs"],
    },
    {
        "id": "h05", "topic": "health", "title": "Quenton Fever",
        "text": (
            "Quenton Fever is a mosquito borne illness marked by joint "
            "aches. Quenton Fever spreads in the wet months, and village "
            "doctors treat the fever with rest, fluids, and a bitter bark "
            "infusion."
        ),
        "categories": ["Diseases", "Health epidemics", "Quenton medicine conditions"],
    },
    {
        "id": "h06", "topic": "health", "title": "Sareth Institute",
        "text": (
            "The Sareth Institute studies infectious diseases and trains "
            "field epidemiologists. Sareth fellows publish on vaccines and "
            "immunity, and the Institute cold rooms hold reference samples "
            "physicians request for diagnosis."
        ),
        "categories": ["Health research organizations", "Medicine science centers", "Sareth diseases researchers"],
    },
    {
        "id": "h07", "topic": "health", "title": "Halomir Vaccine",
        "text": (
            "The Halomir Vaccine protects against Quenton Fever with two "
            "doses. Pharmacists store Halomir vials chilled, and relief "
            "agencies fly the Vaccine upriver each wet season so remote "
            "wards stay stocked."
        ),
        "categories": ["Vaccines", "Medicine treatments", "Halomir health products"],
    },
    {
        "id": "h08", "topic": "health", "title": "Ostramed Biologics",
        "text": (
            "Ostramed Biologics cultures antibody treatments for immune "
            "disorders. Ostramed bioreactors run under sterile protocols, "
            "and the Biologics quality team samples every batch before "
            "hospitals receive a single vial."
        ),
        "categories": ["Medicine drugs producers", "Health treatments makers", "Ostramed pharmaceuticals"],
    },
    {
        "id": "h09", "topic": "health", "title": "Bryla Syndrome",
        "text": (
            "Bryla Syndrome is a rare inherited condition affecting balance "
            "and vision. Children with Bryla Syndrome tire quickly, and "
            "clinicians manage the syndrome with physiotherapy, diet plans, "
            "and regular checkups."
        ),
        "categories": ["Rare diseases", "Health conditions", "Bryla medicine disorders"],
    },
    {
        "id": "h10", "topic": "health", "title": "Penwick Hospital",
        "text": (
            "Penwick Hospital anchors emergency care for the eastern "
            "valleys. Penwick surgeons rebuilt the burn unit last spring, "
            "and the Hospital maternity ward delivers hundreds of newborns "
            "in every calendar year."
        ),
        "categories": ["Hospitals", "Health medicine centers", "Penwick clinics"],
    },
    {
        "id": "h11", "topic": "health", "title": "Lio Castellan",
        "text": (
            "Dr. Lio Castellan is an epidemiologist mapping how epidemics "
            "travel along caravan roads. Castellan advises health ministries "
            "on outbreak response, and Dr. Castellan lectures on vaccines, "
            "sanitation, and quarantine timing."
        ),
        "categories": ["Doctors", "Health epidemics researchers", "Medicine specialists"],
    },
    {
        "id": "h12", "topic": "health", "title": "Mirovia Outbreak",
        "text": (
            "The Mirovia Outbreak was a dengue episode that filled clinics "
            "across the Mirovia delta. Health workers traced the outbreak to "
            "flooded cisterns, and Mirovia officials now drain standing "
            "water before every monsoon."
        ),
        "categories": ["Health epidemics", "Diseases outbreaks", "Mirovia medicine emergencies"],
    },
]

QUERIES = [
    ("Kalvora Jensen nears return for Thornbury Hawks opener", "sports"),
    ("Medrano Valle transfer saga grips Ostvale United", "sports"),
    ("Rilla Okafor withdraws ahead of Brexford Open", "sports"),
    ("Danel Hurst eyes record at Veloria Games", "sports"),
    ("Stellmark Arena hosts Corvale Rovers clash", "sports"),
    ("Tessa Lindqvist addresses Verdant Crest Capital retreat", "business & finance"),
    ("Quillon Bank weighs Marovia Exchange tie-up", "business & finance"),
    ("Halvorsen Group announces Orenda Foods deal", "business & finance"),
    ("Darian Voss trims stake in Caldemere Mining", "business & finance"),
    ("Lumara Holdings courts Westvale Mercantile", "business & finance"),
    ("Mirelle Tanaka previews Ardent Kernel roadmap", "technology"),
    ("Qubitra Labs teases Syntrel Semiconductors pact", "technology"),
    ("Voxhollow outage sparks Cindral Networks scrutiny", "technology"),
    ("Nexivo Systems courts Enoki Compute", "technology"),
    ("Pellemor Robotics halts Helix Forge talks", "technology"),
    ("Dr. Imra Solvang joins Veletria Clinic board", "health"),
    ("Cartwell shelves Halomir rollout this quarter", "health"),
    ("Quenton Fever cases climb in Mirovia", "health"),
    ("Sareth Institute flags Bryla Syndrome cluster", "health"),
    ("Novapulse Trial enrollment stalls at Penwick", "health"),
]


def vector_table() -> dict[str, list[float]]:
    """Word vectors: topical words get 1.0 on their topic's base axis plus
    0.2 on one secondary axis dim; lean words get 0.25 on the base axis."""
    table: dict[str, list[float]] = {}
    for topic, words in TOPIC_WORDS.items():
        base = TOPIC_AXES[topic]
        for j, word in enumerate(words):
            vec = [0.0] * DIM
            vec[base] = 1.0
            vec[base + 1 + (j % 3)] = 0.2
            table[word] = vec
    for word, topic in LEAN_WORDS.items():
        vec = [0.0] * DIM
        vec[TOPIC_AXES[topic]] = 0.25
        table[word] = vec
    return table


@dataclass(frozen=True)
class BenchmarkPaths:
    root: Path
    corpus: Path
    dataset: Path
    labels: Path
    vectors: Path


def write_benchmark(out_dir: str | Path) -> BenchmarkPaths:
    """Materialize corpus.jsonl, queries.tsv, labels.txt, vectors.txt."""
    import json

    root = Path(out_dir)
    root.mkdir(parents=True, exist_ok=True)
    paths = BenchmarkPaths(
        root=root,
        corpus=root / "corpus.jsonl",
        dataset=root / "queries.tsv",
        labels=root / "labels.txt",
        vectors=root / "vectors.txt",
    )
    with open(paths.corpus, "w", encoding="utf-8") as f:
        for doc in DOCS:
            rec = {
                "id": doc["id"],
                "title": doc["title"],
                "text": doc["text"],
                "categories": doc["categories"],
            }
            f.write(json.dumps(rec, ensure_ascii=False) + "\n")
    with open(paths.dataset, "w", encoding="utf-8") as f:
        for text, gold in QUERIES:
            f.write(f"{text}\t{gold}\n")
    paths.labels.write_text("\n".join(LABELS) + "\n", encoding="utf-8")
    table = vector_table()
    with open(paths.vectors, "w", encoding="utf-8") as f:
        f.write(f"{len(table)} {DIM}\n")
        for word, vec in table.items():
            f.write(word + " " + " ".join(str(v) for v in vec) + "\n")
    return paths


def main(argv: list[str] | None = None) -> int:
    import argparse

    parser = argparse.ArgumentParser(
        description="Write the bundled synthetic benchmark files."
    )
    parser.add_argument("--out", required=True, help="output directory")
    args = parser.parse_args(argv)
    paths = write_benchmark(args.out)
    print(f"benchmark written to {paths.root}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
