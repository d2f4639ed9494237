"""Regenerate the bundled fixtures in src/signet/data.

The four named graphs are written from the edge lists below; the
internally 4-connected corpus is drawn with a fixed seed.
"""
import json
import os
from signet.graph import SignedGraph, link, dumps
from signet import oracle
D=os.path.join(os.path.dirname(__file__), '..', 'src', 'signet', 'data', '')
def G(spec):
    es=[link(str(i),u,v,s) for i,u,v,s in spec]
    vs=[]
    for e in es:
        for x in e.ends:
            if x not in vs: vs.append(x)
    return SignedGraph(vs,es)
P,N=1,-1
cyl2=[(6,'X','p',P),(7,'p','q',P),(-11,'q','X',P),(-13,'X','a',P),(11,'a','b',P),(10,'b','g',P),(-12,'g','X',P),(9,'X','g',N),
(-1,'v1','g',P),(-2,'v1','b',P),(-3,'v2','b',P),(-4,'v2','a',P),(-5,'v3','a',P),(-6,'v3','X',P),(-7,'v3','q',P),(8,'v3','p',P),
(1,'v1','v2',P),(2,'v2','v3',P),(-8,'v3','v1',N),(3,'t1','t2',P),(4,'t2','t3',P),(-9,'t3','t1',N),(5,'v1','t1',P),(-10,'v2','t2',P)]
t6=[(3,'v','w',P),(6,'v','w',N),(-1,'a','b',P),(-2,'a','b',N),(-5,'x','y',P),(5,'x','y',N),
(-3,'v','a',P),(4,'w','b',P),(2,'v','x',P),(-6,'w','y',P),(1,'a','y',P),(-4,'b','x',P)]
# Y40 = {3,6,-4,5,-9,-1}; bridges {4} and {1,2,7,-2,-3,-5,-6,-7,-8}
ci4=[(3,'v0','v4',N),(1,'v0','v2',P),(2,'v0','v5',P),(6,'v1','v6',P),(-4,'v1','v5',N),(5,'v1','v3',P),(4,'v1','v4',P),
(7,'v2','v5',P),(-2,'v2','v6',P),(-9,'v2','v4',P),(-3,'v3','v5',P),(-5,'v3','v6',P),(-1,'v4','v6',P),(-6,'v5','v6',P),(-7,'v0','v2',N),(-8,'v3','v5',N)]
c3=[(1,'v0','v4',N),(2,'v0','v2',N),(3,'v0','v1',P),(4,'v0','v3',P),(5,'v1','v3',P),(6,'v1','v4',P),(7,'v1','v2',P),(8,'v2','v4',P),(9,'v3','v4',P),(10,'v3','v4',N)]
for name,spec in [('cyl2conn',cyl2),('t6',t6),('cylint4',ci4),('cyl3conn',c3)]:
    open(D+name+'.json','w').write(dumps(G(spec))+'\n')
for name,fn in oracle._BUNDLE_FILES.items():
    m=oracle.build_bundled(name)
    json.dump(m.to_dict(name),open(D+'matroids/'+fn,'w'),indent=1); open(D+'matroids/'+fn,'a').write('\n')
from signet import corpus
gs = corpus.i4c_cylindrical(seed=2024, count=12)
with open(D + 'i4c_cylindrical.json', 'w') as fh:
    json.dump({"seed": 2024, "graphs": [g.to_dict() for g in gs]}, fh, indent=1)
    fh.write('\n')
