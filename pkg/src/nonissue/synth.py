"""Seeded synthetic corpus of Turkish banking issue reports.

Stand-in for a production corpus: non-issue texts are instantiated from the
discourse-pattern catalog's trigger vocabulary (requests, questions,
inadvertent-creation notes), issue texts from negative ("-ma/-me") and
obligative ("-meli/-malı") verb forms. A configurable fraction of non-issue
reports is phrased to fire no catalog pattern at all, so the label cannot be
read off the pattern features alone.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone

from .store import IssueReport, LabelRecord, Verdict
from .turkish import tr_lower

DEFAULT_PROJECT_COUNTS: tuple[tuple[str, int], ...] = (
    ("Bancassurance", 114),
    ("Collateral Management", 109),
    ("Commercial Loans Allocation", 178),
    ("Commercial Loans Disbursement", 98),
    ("Consumer Loan Services", 76),
    ("Credit Cards", 157),
    ("Customer Information Management", 101),
    ("Deposits", 71),
    ("Foreign Currency Transfers", 151),
    ("Personal Loans Allocation", 145),
)

_GEN_PHRASES = (
    "Başvurunun",
    "Kaydın",
    "Dosyanın",
    "Talebin",
    "Poliçenin",
    "Sözleşmenin",
    "Test kaydının",
    "Çift açılan kaydın",
)

_ACC_PHRASES = (
    "poliçe numarasını",
    "kart limitini",
    "işlem tarihini",
    "komisyon oranını",
    "havale ücretini",
    "hesap bakiyesini",
)

_NOM_PHRASES = (
    "Başvuru ekranı",
    "Kredi kartı ekranı",
    "Onay ekranı",
    "Müşteri kaydı",
    "Poliçe bilgisi",
    "Hesap hareketi",
    "Kart limiti",
    "Adres bilgisi",
    "Vade tarihi",
    "Faiz oranı",
    "Transfer işlemi",
    "Fatura tutarı",
    "Rapor dosyası",
    "Teminat kaydı",
)

_LIMIT_GEN_PHRASES = ("Kart limitinin", "İşlem limitinin", "Havale limitinin", "Günlük limitin")

_RECORD_PHRASES = ("Aday müşteri kaydı", "Çift poliçe kaydı", "Test başvurusu", "Mükerrer talimat")

# Every rendered sentence below fires the intended pattern (and possibly a
# question pattern when it ends in a particle); validated by the test suite.
_NONISSUE_TEMPLATES: dict[str, tuple[str, ...]] = {
    "NI_REQUEST": (
        "{gen} arşive kaldırılmasını rica ederiz.",
        "{gen} silinmesini rica ederiz.",
        "{gen} silinmesi talep edilmektedir.",
        "Müşteri bilgilerinin güncel duruma getirilmesini rica ederiz.",
        "{gen} arşive alınmasını rica ederiz.",
        "Adres bilgilerinin güncel hale getirilmesini talep ederiz.",
    ),
    "NI_YESNO_QUESTION": (
        "{acc} öğrenebilir miyiz?",
        "Müşteri için yeni kart basılacak mıdır?",
        "Bu hesap üzerinden havale yapılabilir mi?",
        "{acc} teyit edebilir miyiz?",
    ),
    "NI_WHY_QUESTION": (
        "Neden {nomlow} iptal edildi?",
        "{nom} neden kapandı?",
        "Müşteri neden listede görünmüyor, bilgi verir misiniz?",
        "Neden komisyon alındı?",
    ),
    "NI_POSSIBLE": (
        "{limitgen} artırılması mümkün müdür?",
        "{limitgen} geri alınması mümkün mü?",
        "Bu işlem için vade uzatmak mümkün olur mu acaba?",
        "İşlemin şubeden yapılması mümkün müdür?",
    ),
    "NI_INADVERTENTLY": (
        "{record} sehven yaratılmıştır.",
        "Sehven çift kayıt girilmiştir.",
        "{record} sehven açılmıştır, kapatılmasını rica ederiz.",
        "Talimat sehven girilmiştir.",
    ),
}

# Requests phrased without any trigger root, question particle or trigger
# word: suffix evidence at most, which never fires a rule on its own.
_PATTERN_FREE_TEMPLATES: tuple[str, ...] = (
    "Bilgi verilmesini rica ederiz.",
    "Konu hakkında bilgi talep ederiz.",
    "Ekteki listenin kontrolünü rica ederiz.",
    "İlgili ekibe yönlendirilmesini rica ederiz.",
    "Yetki tanımının yapılması hususunda destek rica ederiz.",
    "Acil dönüş rica ederiz, müşteri şubede beklemektedir.",
)

_ISSUE_TEMPLATES: tuple[str, ...] = (
    "{nom} açılamadı.",
    "{nom} bulunamadı.",
    "{nom} güncellenemedi.",
    "{nom} silinemedi.",
    "{nom} yüklenemedi.",
    "{nom} hesaplanamadı.",
    "{nom} görüntülenemedi.",
    "{nom} gönderilemedi.",
    "{nom} oluşturulamadı.",
    "{nom} değiştirilemedi.",
    "{nom} kaydedilemedi.",
    "Toplu ödeme işlemini çalıştıramadık.",
    "Müşteri işlemi tamamlayamadı, ekranda hata kodu {digits} görünüyor.",
    "{nom} otomatik kapanmalıydı.",
    "{nom} güncellenmeliydi.",
    "Sistem güncel kuru otomatik seçmeliydi.",
    "{nom} açılmalıydı.",
    "Ekran hata vermemeliydi.",
    "{nom} yanlış hesaplandı.",
)

_ISSUE_DETAILS: tuple[str, ...] = (
    "Ekran görüntüsü ektedir.",
    "Hata kodu {digits} alınmaktadır.",
    "Tekrar denendi, sonuç değişmedi.",
    "Müşteri numarası {digits}.",
    "İşlem saat {hour} sıralarında denendi.",
)

_NONISSUE_DETAILS: tuple[str, ...] = (
    "Müşteri numarası {digits}.",
    "Bilgilerinize sunarız.",
    "Müşteri şubeden aranmak istemektedir.",
    "Talep eden şube kodu {digits}.",
)

_CODE_WEIGHTS: tuple[tuple[str, float], ...] = (
    ("NI_REQUEST", 0.78),
    ("NI_YESNO_QUESTION", 0.07),
    ("NI_WHY_QUESTION", 0.05),
    ("NI_POSSIBLE", 0.04),
    ("NI_INADVERTENTLY", 0.06),
)


@dataclass(frozen=True)
class GeneratorConfig:
    project_counts: tuple[tuple[str, int], ...] = DEFAULT_PROJECT_COUNTS
    prevalence: float = 0.1325
    pattern_free_fraction: float = 0.10
    labeler: str = "synthetic"
    start_time: datetime = datetime(2020, 10, 1, 9, 0, 0, tzinfo=timezone.utc)

    def __post_init__(self) -> None:
        if not 0.0 <= self.prevalence <= 1.0:
            raise ValueError(f"prevalence {self.prevalence} outside [0, 1]")
        if not 0.0 <= self.pattern_free_fraction <= 1.0:
            raise ValueError(f"pattern_free_fraction {self.pattern_free_fraction} outside [0, 1]")
        if not self.project_counts or any(c <= 0 for _, c in self.project_counts):
            raise ValueError("project counts must be positive")


def round_half_up(value: float) -> int:
    import math

    return int(math.floor(value + 0.5))


def scale_project_counts(total: int) -> tuple[tuple[str, int], ...]:
    """Largest-remainder apportionment of the default project mix to ``total``."""
    if total < len(DEFAULT_PROJECT_COUNTS):
        raise ValueError(f"need at least {len(DEFAULT_PROJECT_COUNTS)} reports, one per project")
    base_total = sum(c for _, c in DEFAULT_PROJECT_COUNTS)
    shares = [(name, count * total / base_total) for name, count in DEFAULT_PROJECT_COUNTS]
    floors = [(name, int(share), share - int(share)) for name, share in shares]
    assigned = sum(f for _, f, _ in floors)
    order = sorted(range(len(floors)), key=lambda i: (-floors[i][2], i))
    counts = {name: f for name, f, _ in floors}
    for i in order[: total - assigned]:
        counts[floors[i][0]] += 1
    return tuple((name, counts[name]) for name, _ in DEFAULT_PROJECT_COUNTS)


def _fill(template: str, rng: random.Random) -> str:
    return template.format(
        gen=rng.choice(_GEN_PHRASES),
        acc=rng.choice(_ACC_PHRASES),
        nom=rng.choice(_NOM_PHRASES),
        nomlow=tr_lower(rng.choice(_NOM_PHRASES)),
        limitgen=rng.choice(_LIMIT_GEN_PHRASES),
        record=rng.choice(_RECORD_PHRASES),
        digits=str(rng.randrange(1000000, 9999999)),
        hour=str(rng.randrange(9, 18)),
    )


def generate_synthetic(config: GeneratorConfig, seed: int) -> list[tuple[IssueReport, LabelRecord]]:
    """Deterministic labeled corpus; identical (config, seed) give identical output."""
    rng = random.Random(seed)
    total = sum(count for _, count in config.project_counts)
    n_nonissue = round_half_up(total * config.prevalence)
    n_pattern_free = round_half_up(n_nonissue * config.pattern_free_fraction)

    nonissue_positions = sorted(rng.sample(range(total), n_nonissue)) if n_nonissue else []
    pattern_free = set(rng.sample(nonissue_positions, n_pattern_free)) if n_pattern_free else set()
    nonissue_set = set(nonissue_positions)

    codes = [c for c, _ in _CODE_WEIGHTS]
    weights = [w for _, w in _CODE_WEIGHTS]

    projects: list[str] = []
    for name, count in config.project_counts:
        projects.extend([name] * count)

    pairs: list[tuple[IssueReport, LabelRecord]] = []
    for i in range(total):
        created = config.start_time + timedelta(minutes=i)
        report_id = f"R{i + 1:05d}"
        if i in nonissue_set:
            code = rng.choices(codes, weights=weights, k=1)[0]
            if i in pattern_free:
                summary = _fill(rng.choice(_PATTERN_FREE_TEMPLATES), rng)
            else:
                summary = _fill(rng.choice(_NONISSUE_TEMPLATES[code]), rng)
            description = summary
            if rng.random() < 0.5:
                description = summary + " " + _fill(rng.choice(_NONISSUE_DETAILS), rng)
            verdict, pattern_code = Verdict.NON_ISSUE, code
        else:
            summary = _fill(rng.choice(_ISSUE_TEMPLATES), rng)
            description = summary
            if rng.random() < 0.5:
                description = summary + " " + _fill(rng.choice(_ISSUE_DETAILS), rng)
            verdict, pattern_code = Verdict.ISSUE, None
        report = IssueReport(
            id=report_id,
            project=projects[i],
            summary=summary,
            description=description,
            created_at=created,
        )
        label = LabelRecord(
            report_id=report_id,
            verdict=verdict,
            pattern_code=pattern_code,
            labeler=config.labeler,
            labeled_at=created,
        )
        pairs.append((report, label))
    return pairs
