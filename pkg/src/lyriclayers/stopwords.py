"""Bundled stopword data: an English list for topic preprocessing and
per-language profiles for lightweight language detection.

Profiles cover the ten languages that dominate popular-music lyric corpora.
Each profile is a set of very frequent function words; detection scores a
text by the fraction of its tokens found in a profile.
"""

from __future__ import annotations

ENGLISH = frozenset("""
a about above after again against all am an and any are aren as at be because
been before being below between both but by can cannot could couldn did didn
do does doesn doing don down during each few for from further had hadn has
hasn have haven having he her here hers herself him himself his how i if in
into is isn it its itself just ll me more most mustn my myself no nor not now
of off on once only or other our ours ourselves out over own re same shan she
should shouldn so some such than that the their theirs them themselves then
there these they this those through to too under until up very was wasn we
were weren what when where which while who whom why will with won would
wouldn you your yours yourself yourselves ve don gonna gotta oh yeah ooh la
na hey uh huh ah whoa
""".split())

# Top function words per language, ordered sets are unnecessary: scoring only
# tests membership. Keep single-letter words (y, a, e, i, o) -- they carry
# most of the signal for Romance languages.
LANGUAGE_PROFILES: dict[str, frozenset[str]] = {
    "en": frozenset("""
        the and of to a in is you that it he was for on are as with his they i
        at be this have from or one had by but not what all were we when your
        can there an which she do how their if will up out them then so him
        her would like me no my me time
        """.split()),
    "es": frozenset("""
        el la de que y a en un ser se no por con su para como estar tener le
        lo todo pero mas más hacer o poder este ir otro ese si sí me ya ver
        porque dar cuando muy sin vez mucho sobre mi yo tambien también hasta
        tu te los las una es al del esta está son que qué él
        """.split()),
    "de": frozenset("""
        der die und in den von zu das mit sich des auf fur für ist im dem
        nicht ein eine als auch es an werden aus er hat dass sie nach wird bei
        um am sind noch wie einem uber über so zum war haben nur oder aber vor
        bis mehr durch man sein ich du wir mein dein mich dich
        """.split()),
    "fr": frozenset("""
        le de un et a à il ne je son que se qui ce dans en du elle au pour
        pas sur faire plus dire me on mon lui nous comme mais avec tout y
        aller voir bien ou où sans tu leur si moi te la les des est été être
        ton ma mes sont cette vous j ai
        """.split()),
    "it": frozenset("""
        di che la il un a per in una mi sono ho ma lo ha le si ti con non
        come io questo qui hanno o quello tu ci anche del della nel se quando
        noi loro mio tua cosa chi dove piu più molto bene tutto e è i gli alla
        da sei perche perché
        """.split()),
    "pt": frozenset("""
        de a o que e é do da em um para com nao não uma os no se na por mais
        as dos como mas foi ao ele das tem seu sua ou ser quando muito nos ja
        já esta está eu tambem também so só pelo pela ate até isso ela entre
        era depois sem mesmo voce você meu minha te sao são
        """.split()),
    "nl": frozenset("""
        de en van ik te dat die in een hij het niet zijn is was op aan met als
        voor had er maar om hem dan zou of wat mijn men dit zo door over ze
        zich bij ook tot je mij uit daar haar naar heb hoe heeft hebben deze u
        want nog zal me zij nu geen
        """.split()),
    "sv": frozenset("""
        och det att i en jag hon som han pa på den med var sig for för sa så
        till ar är men ett om hade de av icke mig du henne da då sin nu har
        inte hans honom skulle hennes dar där min man ej vid kunde nagot något
        fran från ut nar när efter upp vi dem vara vad over över an än dig kan
        """.split()),
    "sw": frozenset("""
        na ya wa kwa ni za la cha katika kuwa kama kwamba hii huu hilo yake
        wake zake sana pia au hata si ndio wewe mimi yeye sisi wao lakini bila
        baada kabla kila moja mbili watu mtu wangu yangu sasa tena hapa huko
        """.split()),
    "la": frozenset("""
        et in est non ad ut cum si sed quod qui quae de ex hoc me te se nec
        per atque aut enim ergo iam nunc quid sunt esse erat tibi mihi nobis
        vobis omnia sine super sub ante post contra inter tamen autem vel nam
        neque quia ita sic tu ego nos vos
        """.split()),
}
